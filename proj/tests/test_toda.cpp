#include <doctest.h>

#include <vector>

#include "ncalg/instances.hpp"
#include "ncalg/toda.hpp"

using namespace ncalg;

namespace {

bool all_zero_nonvacuous(const std::vector<TruncSeries2>& res, int min1 = 1, int min2 = 1) {
    for (const auto& r : res) {
        if (r.order1() < min1 || r.order2() < min2) return false;
        if (!r.is_zero()) return false;
    }
    return true;
}

} // namespace

TEST_CASE("system residual: constants do not solve the length-2 system") {
    const auto one = TruncSeries2::one(vars::u, vars::v, 4, 4, 4, 4, 2);
    const auto res = toda_residual_a({one, one});
    REQUIRE(res.size() == 2);
    CHECK(res[0] == -res[0].one_like());
    CHECK(res[1] == res[1].one_like());
}

TEST_CASE("system residual: the length-1 convention") {
    SeededRng rng(61);
    TruncSeries1 eta = random_poly1(rng, vars::v, 3, 5, 2, 4);
    eta.set_coeff(0, random_invertible(rng, 2, 4));
    TruncSeries1 psi = random_poly1(rng, vars::u, 3, 5, 2, 4);
    const auto phi = lift(eta.right_mul(eta.constant_term().inverse()), vars::u, vars::v, 5, 5) *
                     lift(psi, vars::u, vars::v, 5, 5);
    // with invertible psi(0) this is the unique length-1 solution
    psi.set_coeff(0, eta.constant_term());
    const auto phi2 = lift(eta.right_mul(eta.constant_term().inverse()), vars::u, vars::v, 5, 5) *
                      lift(psi, vars::u, vars::v, 5, 5);
    const auto res = toda_residual_a({phi2});
    CHECK(all_zero_nonvacuous(res, 2, 2));
}

TEST_CASE("integral matrix: size one, explicit single integral, defining identity") {
    SeededRng rng(67);
    TruncSeries1 psi1 = random_poly1(rng, vars::u, 3, 6, 2, 4);
    psi1.set_coeff(0, random_invertible(rng, 2, 4));
    const auto dt1 = toda_delta({psi1});
    CHECK(dt1.delta.at(0, 0) == psi1);

    // commutative pair psi = (1+u, 1)
    const auto one = TruncSeries1::one(vars::u, 6, 6, 1);
    const auto psi_a = one + TruncSeries1::monomial(vars::u, 6, 6, 1, AlgebraElement::identity(1));
    const auto dt = toda_delta({psi_a, one});
    CHECK(dt.delta.at(0, 0) == psi_a);
    CHECK(dt.delta.at(1, 1) == one);
    CHECK(dt.delta.at(0, 1).is_zero());
    const auto expected = (one * psi_a.inverse()).integrate(vars::u) * psi_a;
    CHECK(equal_on_common(dt.delta.at(1, 0), expected));

    // theta layout
    CHECK(dt.theta.at(1, 0) == one);
    CHECK(equal_on_common(dt.theta.at(0, 0), psi_a.inverse() * psi_a.derive(vars::u)));
}

TEST_CASE("solver: constant and separable length-1 cases") {
    SeededRng rng(71);
    const auto c = random_invertible(rng, 2, 5);
    TodaInitial init;
    init.eta = {TruncSeries1::constant(vars::v, 5, 5, c)};
    init.psi = {TruncSeries1::constant(vars::u, 5, 5, c)};
    const auto sol = toda_solve_a(init);
    CHECK(sol.phi[0] == TruncSeries2::constant(vars::u, vars::v, 5, 5, 5, 5, c));

    const auto e = rng.element(2, 4);
    const auto f = rng.element(2, 4);
    TodaInitial init2;
    init2.eta = {TruncSeries1::one(vars::v, 5, 5, 2) +
                 TruncSeries1::monomial(vars::v, 5, 5, 1, e)};
    init2.psi = {TruncSeries1::one(vars::u, 5, 5, 2) +
                 TruncSeries1::monomial(vars::u, 5, 5, 1, f)};
    const auto sol2 = toda_solve_a(init2);
    const auto expect = lift(init2.eta[0], vars::u, vars::v, 5, 5) *
                        lift(init2.psi[0], vars::u, vars::v, 5, 5);
    CHECK(sol2.phi[0] == expect);
    CHECK(all_zero_nonvacuous(toda_residual_a(sol2.phi), 2, 2));
}

TEST_CASE("solver: random length-3 instance carries both certificates") {
    SeededRng rng(73);
    const auto init = random_toda_initial(rng, 3, 3, 6, 6, 2, 3);
    const auto sol = toda_solve_a(init);
    REQUIRE(sol.phi.size() == 3);

    CHECK(toda_check_initial(sol, init));
    CHECK(all_zero_nonvacuous(toda_residual_a(sol.phi)));

    const auto lax = toda_lax_residual(sol.phi);
    for (const auto& per_i : lax)
        for (const auto& r : per_i) {
            CHECK(r.order1() >= 1);
            CHECK(r.is_zero());
        }
}

TEST_CASE("solver rejects inconsistent corners") {
    SeededRng rng(79);
    auto init = random_toda_initial(rng, 2, 2, 4, 4, 2, 3);
    init.psi[1].set_coeff(0, init.psi[1].constant_term() + AlgebraElement::identity(2));
    CHECK_THROWS_AS(toda_solve_a(init), DegenerateData);
}

TEST_CASE("liouville closed form") {
    // eta = psi = 1 scalar: phi = 1 + uv and the left side equals (1+uv)^{-2}
    const auto one_u = TruncSeries1::one(vars::u, 6, 6, 1);
    const auto one_v = TruncSeries1::one(vars::v, 6, 6, 1);
    const auto phi = liouville_solve(one_v, one_u, AlgebraElement::identity(1));
    TruncSeries2 expect = TruncSeries2::one(vars::u, vars::v, 6, 6, 6, 6, 1);
    expect.set_coeff(1, 1, AlgebraElement::identity(1));
    CHECK(phi == expect);
    const auto lhs = (phi.derive(vars::v) * phi.inverse()).derive(vars::u);
    const auto phinv = phi.inverse();
    CHECK(equal_on_common(lhs, phinv * phinv));

    // psi = 1: phi = eta (1 + u * integral(eta^{-1} (eta*)^{-1}))
    SeededRng rng(83);
    TruncSeries1 eta = random_poly1(rng, vars::v, 3, 6, 2, 3);
    eta.set_coeff(0, AlgebraElement::identity(2));
    const auto one_u2 = TruncSeries1::one(vars::u, 6, 6, 2);
    const auto phi2 = liouville_solve(eta, one_u2, AlgebraElement::identity(2));
    const auto integral = (eta.inverse() * eta.star().inverse()).integrate(vars::v);
    const auto u_mono = TruncSeries2::one(vars::u, vars::v, 6, 6, 6, 6, 2);
    TruncSeries2 u_lin(vars::u, vars::v, 6, 6, 6, 6, 2);
    u_lin.set_coeff(1, 0, AlgebraElement::identity(2));
    const auto expect2 = lift(eta, vars::u, vars::v, 6, 6) *
                         (u_mono + u_lin * lift(integral, vars::u, vars::v, 6, 6));
    CHECK(equal_on_common(phi2, expect2));
}

TEST_CASE("symmetric solver: C with k=1 matches the closed form") {
    SeededRng rng(89);
    const auto a = random_orthogonal(rng, 2, 2);
    TruncSeries1 eta = random_poly1(rng, vars::v, 3, 6, 2, 3);
    eta.set_coeff(0, a);
    TruncSeries1 psi = random_poly1(rng, vars::u, 3, 6, 2, 3);
    psi.set_coeff(0, a);

    TodaInitial half;
    half.eta = {eta};
    half.psi = {psi};
    const auto sol = toda_solve_sym(half, TodaType::C);
    REQUIRE(sol.phi.size() == 2);
    CHECK(all_zero_nonvacuous(toda_residual_c(sol.phi, 1)));

    const auto closed = liouville_solve(eta, psi, a);
    CHECK(equal_on_common(sol.phi[0], closed));
}

TEST_CASE("symmetric solver: C with k=2 and B with k=1") {
    SeededRng rng(97);
    const auto init_c = random_sym_initial(rng, TodaType::C, 2, 2, 5, 5, 2, 2);
    const auto sol_c = toda_solve_sym(init_c, TodaType::C);
    REQUIRE(sol_c.phi.size() == 4);
    CHECK(all_zero_nonvacuous(toda_residual_c(sol_c.phi, 2)));
    for (int j = 0; j < 4; ++j) {
        const auto prod = sol_c.phi[static_cast<size_t>(3 - j)] *
                          sol_c.phi[static_cast<size_t>(j)].star();
        CHECK(prod == prod.one_like());
    }

    const auto init_b = random_sym_initial(rng, TodaType::B, 1, 2, 5, 5, 2, 2);
    const auto sol_b = toda_solve_sym(init_b, TodaType::B);
    REQUIRE(sol_b.phi.size() == 3);
    CHECK(all_zero_nonvacuous(toda_residual_b(sol_b.phi, 1)));

    // inconsistent middle data is rejected
    auto bad = init_b;
    bad.eta[1] = random_poly1(rng, vars::v, 2, 5, 2, 3);
    bad.eta[1].set_coeff(0, AlgebraElement::identity(2));
    CHECK_THROWS_AS(toda_solve_sym(bad, TodaType::B), SymmetryViolated);
}

TEST_CASE("symmetric solver: unit data for B stays consistent") {
    TodaInitial half;
    half.eta = {TruncSeries1::one(vars::v, 4, 4, 2), TruncSeries1::one(vars::v, 4, 4, 2)};
    half.psi = {TruncSeries1::one(vars::u, 4, 4, 2), TruncSeries1::one(vars::u, 4, 4, 2)};
    const auto sol = toda_solve_sym(half, TodaType::B);
    CHECK(all_zero_nonvacuous(toda_residual_b(sol.phi, 1)));
}

TEST_CASE("infinite recursion: first step and hand-eliminated 2x2 case") {
    SeededRng rng(101);
    const auto f = random_rank_kernel(rng, 2, 5, 5, 1, 3);
    CHECK(toda_infinite_step(f, 1) == f);

    // f = 1 + uv: the second step is f_uv - f_v f^{-1} f_u
    TruncSeries2 g = TruncSeries2::one(vars::u, vars::v, 6, 6, 6, 6, 1);
    g.set_coeff(1, 1, AlgebraElement::identity(1));
    const auto step2 = toda_infinite_step(g, 2);
    const auto expect = g.derive(vars::u).derive(vars::v) -
                        g.derive(vars::v) * g.inverse() * g.derive(vars::u);
    CHECK(equal_on_common(step2, expect));
}

TEST_CASE("infinite recursion reproduces the solver components") {
    SeededRng rng(103);
    const auto init = random_toda_initial(rng, 3, 2, 6, 6, 2, 2);
    const auto sol = toda_solve_a(init);
    for (int i = 1; i <= 3; ++i) {
        const auto via = toda_infinite_step(sol.phi[0], i);
        CHECK(via.order1() >= 1);
        CHECK(via.order2() >= 1);
        CHECK(equal_on_common(via, sol.phi[static_cast<size_t>(i - 1)]));
    }
}

TEST_CASE("separable-kernel rank detection") {
    SeededRng rng(107);
    // single product has rank one
    TruncSeries1 p = random_poly1(rng, vars::u, 3, 5, 1, 4);
    TruncSeries1 q = random_poly1(rng, vars::v, 3, 5, 1, 4);
    p.set_coeff(0, AlgebraElement::identity(1));
    q.set_coeff(0, AlgebraElement::identity(1));
    const auto f1 = lift(p, vars::u, vars::v, 5, 5) * lift(q, vars::u, vars::v, 5, 5);
    CHECK(kernel_rank_check(f1, 1));

    const auto f3 = random_rank_kernel(rng, 3, 7, 7, 2, 2);
    CHECK(kernel_rank_check(f3, 3));
    CHECK_FALSE(kernel_rank_check(f3, 2));

    const auto init = random_toda_initial(rng, 3, 2, 7, 7, 2, 2);
    const auto sol = toda_solve_a(init);
    CHECK(kernel_rank_check(sol.phi[0], 3));
}

TEST_CASE("factorization flow: the length-1 component is flow-independent") {
    SeededRng rng(109);
    auto kernel = random_kernel_family(rng, 1, vars::v, 3, 6, 2, 3);
    const auto sol = toda_flow_factorization(kernel, vars::u, 6);
    CHECK(sol.phi[0].derive(vars::u).is_zero());
    CHECK(sol.phi[0].restrict_to_zero(vars::v) ==
          TruncSeries1::one(vars::u, 6, 6, 2));
}

TEST_CASE("factorization flow: longer kernels solve the system") {
    SeededRng rng(113);
    auto k2 = random_kernel_family(rng, 2, vars::v, 3, 7, 1, 4);
    const auto sol2 = toda_flow_factorization(k2, vars::u, 6);
    CHECK(all_zero_nonvacuous(toda_residual_a(sol2.phi)));
    for (const auto& p : sol2.phi)
        CHECK(p.restrict_to_zero(vars::v) == TruncSeries1::one(vars::u, 6, 6, 1));

    auto k3 = random_kernel_family(rng, 3, vars::v, 3, 8, 2, 2);
    const auto sol3 = toda_flow_factorization(k3, vars::u, 6);
    CHECK(all_zero_nonvacuous(toda_residual_a(sol3.phi)));
}

TEST_CASE("lax residual flags non-solutions") {
    SeededRng rng(127);
    const auto init = random_toda_initial(rng, 2, 2, 5, 5, 2, 3);
    auto sol = toda_solve_a(init);
    // perturb one coefficient
    auto broken = sol.phi;
    TruncSeries2 bump(vars::u, vars::v, broken[0].order1(), broken[0].order2(),
                      broken[0].cap1(), broken[0].cap2(), 2);
    bump.set_coeff(1, 1, AlgebraElement::identity(2));
    broken[0] = broken[0] + bump;
    bool some_nonzero = false;
    for (const auto& per_i : toda_lax_residual(broken))
        for (const auto& r : per_i) some_nonzero = some_nonzero || !r.is_zero();
    CHECK(some_nonzero);
    bool res_nonzero = false;
    for (const auto& r : toda_residual_a(broken)) res_nonzero = res_nonzero || !r.is_zero();
    CHECK(res_nonzero);
}
