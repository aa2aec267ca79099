// Acceptance suite: one pass/fail line per criterion, each with its runtime
// budget enforced. Exits nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ncalg/cli.hpp"
#include "ncalg/instances.hpp"
#include "ncalg/soliton.hpp"
#include "ncalg/toda.hpp"

using namespace ncalg;

namespace {

struct Checker {
    bool ok = true;
    std::string first_failure;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            first_failure = what;
        }
    }
};

int g_failures = 0;

void criterion(int id, const std::string& name, double budget_seconds,
               const std::function<void(Checker&)>& body) {
    Checker ck;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(ck);
    } catch (const std::exception& e) {
        ck.require(false, std::string("exception: ") + e.what());
    }
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    ck.require(elapsed < budget_seconds, "runtime budget exceeded");
    std::printf("[%s] criterion %2d: %s (%.2fs < %.0fs)%s%s\n", ck.ok ? "PASS" : "FAIL", id,
                name.c_str(), elapsed, budget_seconds, ck.ok ? "" : " -- ",
                ck.ok ? "" : ck.first_failure.c_str());
    std::fflush(stdout);
    if (!ck.ok) ++g_failures;
}

bool zero_nonvacuous(const TruncSeries2& r, int m1, int m2) {
    return r.order1() >= m1 && r.order2() >= m2 && r.is_zero();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream is(p, std::ios::binary);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

// ---- criteria -------------------------------------------------------------

void factorization_round_trip(Checker& ck) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SeededRng rng(seed);
        const auto f = random_kernel_family(rng, 3, vars::t, 3, 8, 2, 3);
        const auto l = dop_from_kernel(f, vars::t);
        for (const auto& fi : f) {
            const auto r = l.apply(fi);
            ck.require(r.order() >= 1, "annihilation window is vacuous");
            ck.require(r.is_zero(), "operator does not annihilate its kernel");
        }
        const auto recomposed = dop_factorize(f, vars::t).recompose();
        ck.require(recomposed.order() == l.order(), "order mismatch after recomposition");
        for (int i = 0; i <= l.order(); ++i) {
            ck.require(!recomposed.coeff(i).empty(), "recomposed coefficient window empty");
            ck.require(equal_on_common(recomposed.coeff(i), l.coeff(i)),
                       "recomposed factors disagree with the kernel operator");
        }
    }
}

void kernel_normalization(Checker& ck) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SeededRng rng(seed);
        std::vector<TruncSeries1> g;
        for (int i = 0; i < 3; ++i) g.push_back(random_unit_poly1(rng, vars::t, 3, 8, 2, 3));
        const auto f = dop_kernel_from_factorization(g, vars::t);
        const auto w0 =
            wronski(f, vars::t).map([](const TruncSeries1& s) { return s.constant_term(); });
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                if (i == j)
                    ck.require(w0.at(i, j) == AlgebraElement::identity(2),
                               "diagonal of the normalized Wronski matrix is not one");
                else if (j > i)
                    ck.require(w0.at(i, j).is_zero(), "normalized Wronski matrix not triangular");
            }
        Factorization<TruncSeries1> fact{vars::t, {}};
        for (const auto& gi : g) fact.b.push_back(gi.derive(vars::t) * gi.inverse());
        const auto l = fact.recompose();
        for (const auto& fj : f) {
            const auto r = l.apply(fj);
            ck.require(r.order() >= 1 && r.is_zero(), "recomposed operator misses its kernel");
        }
    }
}

void vieta_identities(Checker& ck) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        SeededRng rng(seed);
        const auto roots = random_generic_roots(rng, 3, 2, 4);
        const auto a = vieta_coeffs(roots);
        for (const auto& x : roots) {
            AlgebraElement val = x.pow(3);
            for (int r = 1; r <= 3; ++r) val += a[static_cast<size_t>(r - 1)] * x.pow(3 - r);
            ck.require(val.is_zero(), "root does not satisfy the monic polynomial");
        }
        const auto y = vieta_y(roots);
        const auto via = vieta_via_factorization(roots, 5);
        ck.require(via.size() == y.size(), "factor count mismatch");
        for (size_t i = 0; i < y.size(); ++i)
            ck.require(via[i] == y[i], "factorization route disagrees with the conjugated roots");
    }
}

void toda_type_a(Checker& ck) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SeededRng rng(seed);
        const auto init = random_toda_initial(rng, 3, 3, 6, 6, 2, 3);
        const auto sol = toda_solve_a(init);
        for (const auto& r : toda_residual_a(sol.phi))
            ck.require(zero_nonvacuous(r, 2, 1), "system residual nonzero or vacuous");
        for (const auto& per_i : toda_lax_residual(sol.phi))
            for (const auto& r : per_i)
                ck.require(r.order1() >= 1 && r.is_zero(), "factorized-form residual nonzero");
        ck.require(toda_check_initial(sol, init), "initial slices do not match");
        (void)toda_delta(init.psi); // throws if the defining identity fails
    }
}

void toda_types_b_c(Checker& ck) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SeededRng rng(seed);
        const auto init_c = random_sym_initial(rng, TodaType::C, 2, 2, 5, 5, 2, 2);
        const auto sol_c = toda_solve_sym(init_c, TodaType::C);
        for (const auto& r : toda_residual_c(sol_c.phi, 2))
            ck.require(zero_nonvacuous(r, 1, 1), "C-system residual nonzero or vacuous");
        for (int j = 0; j < 4; ++j) {
            const auto prod =
                sol_c.phi[static_cast<size_t>(3 - j)] * sol_c.phi[static_cast<size_t>(j)].star();
            ck.require(prod == prod.one_like(), "C-system symmetry broken");
        }

        const auto init_b = random_sym_initial(rng, TodaType::B, 1, 2, 5, 5, 2, 2);
        const auto sol_b = toda_solve_sym(init_b, TodaType::B);
        for (const auto& r : toda_residual_b(sol_b.phi, 1))
            ck.require(zero_nonvacuous(r, 1, 1), "B-system residual nonzero or vacuous");
        for (int j = 0; j < 3; ++j) {
            const auto prod =
                sol_b.phi[static_cast<size_t>(2 - j)] * sol_b.phi[static_cast<size_t>(j)].star();
            ck.require(prod == prod.one_like(), "B-system symmetry broken");
        }
    }

    // C with k = 1 agrees with the closed-form scalar-case solution
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SeededRng rng(100 + seed);
        const AlgebraElement a = random_invertible(rng, 2, 3);
        TruncSeries1 eta = random_poly1(rng, vars::v, 3, 6, 2, 3);
        TruncSeries1 psi = random_poly1(rng, vars::u, 3, 6, 2, 3);
        eta.set_coeff(0, a);
        psi.set_coeff(0, a);
        TodaInitial half;
        half.eta = {eta};
        half.psi = {psi};
        const auto sol = toda_solve_sym(half, TodaType::C);
        const auto closed = liouville_solve(eta, psi, a);
        ck.require(!closed.empty() && equal_on_common(sol.phi[0], closed),
                   "closed form disagrees with the symmetric solver");
    }

    // unit scalar data degenerates to 1 + uv
    const auto one_u = TruncSeries1::one(vars::u, 6, 6, 1);
    const auto one_v = TruncSeries1::one(vars::v, 6, 6, 1);
    const auto phi = liouville_solve(one_v, one_u, AlgebraElement::identity(1));
    TruncSeries2 expect = TruncSeries2::one(vars::u, vars::v, 6, 6, 6, 6, 1);
    expect.set_coeff(1, 1, AlgebraElement::identity(1));
    ck.require(phi == expect, "unit data does not give 1 + uv");
}

void infinite_recursion_and_rank(Checker& ck) {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        SeededRng rng(seed);
        const auto init = random_toda_initial(rng, 3, 3, 6, 6, 2, 3);
        const auto sol = toda_solve_a(init);
        for (int i = 1; i <= 3; ++i) {
            const auto via = toda_infinite_step(sol.phi[0], i);
            ck.require(via.order1() >= 1 && via.order2() >= 1, "recursion window vacuous");
            ck.require(equal_on_common(via, sol.phi[static_cast<size_t>(i - 1)]),
                       "recursion disagrees with the solver");
        }
        ck.require(kernel_rank_check(sol.phi[0], 3), "first component is not of rank 3");
    }
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SeededRng rng(200 + seed);
        const auto f = random_rank_kernel(rng, 3, 7, 7, 2, 2);
        ck.require(kernel_rank_check(f, 3), "separable kernel fails at its own rank");
        ck.require(!kernel_rank_check(f, 2), "separable kernel passes below its rank");
    }
}

void flow_form(Checker& ck) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        SeededRng rng(seed);
        auto kernel = random_kernel_family(rng, 3, vars::v, 3, 8, 2, 2);
        // throws if the integral matrix differs from the Jordan exponential or
        // if the recomposed operator depends on the flow parameter
        const auto sol = toda_flow_factorization(kernel, vars::u, 6);
        for (const auto& p : sol.phi)
            ck.require(p.restrict_to_zero(vars::v) == TruncSeries1::one(vars::u, 6, 6, 2),
                       "flow solution does not start at the unit slice");
        for (const auto& r : toda_residual_a(sol.phi))
            ck.require(zero_nonvacuous(r, 1, 1), "flow solution residual nonzero");
    }
}

void kp_nkdv_calculus(Checker& ck) {
    SeededRng rng(8);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = random_kp_operator(rng, 8, 2, 3, -3);
        const auto q = random_kp_operator(rng, 8, 2, 3, -3);
        const auto r = random_kp_operator(rng, 8, 2, 3, -3);
        const auto left = psdo_compose(psdo_compose(p, q), r);
        const auto right = psdo_compose(p, psdo_compose(q, r));
        for (int k = std::max(left.kmin(), right.kmin()); k <= left.kmax(); ++k)
            ck.require(equal_on_common(left.coeff(k), right.coeff(k)),
                       "composition is not associative on the common window");
    }

    for (int n = 2; n <= 3; ++n) {
        const auto m = random_nkdv_operator(rng, n, 8, 2, 3);
        const auto l = psdo_nth_root(m, -4);
        const auto back = psdo_power(l, n);
        ck.require(back.kmin() <= -1, "root power lost its negative window");
        for (int k = back.kmin(); k <= n; ++k)
            ck.require(equal_on_common(back.coeff(k), m.coeff(k)),
                       "root then power does not reproduce the operator");
    }

    const auto l = random_kp_operator(rng, 8, 2, 3, -5);
    for (int m = 1; m <= 3; ++m) {
        const auto rhs = kp_rhs(l, m); // TangencyViolation on any order >= 0 term
        ck.require(rhs.kmax() <= -1, "flow has a nonnegative order");
    }

    const auto proto = TruncSeries1(vars::x, 8, 8, 2);
    const auto u = random_poly1(rng, vars::x, 8, 8, 2, 3);
    PsDO<TruncSeries1> m2(vars::x, 0, 2, true, proto);
    m2.set_coeff(2, proto.one_like());
    m2.set_coeff(0, u);
    const auto r1 = nkdv_rhs(m2, 1);
    const auto ux = u.derive(vars::x);
    ck.require(r1.kmax() <= 0 && !r1.coeff(0).empty() && equal_on_common(r1.coeff(0), ux),
               "first flow is not the shift");
    ck.require(nkdv_rhs(m2, 2).is_zero_stored(), "second flow is not trivial");
    const auto r3 = nkdv_rhs(m2, 3);
    const auto expect = (ux.derive(vars::x).derive(vars::x) + ux * u.scaled(Rational(3)) +
                         u * ux.scaled(Rational(3)))
                            .scaled(Rational(1, 4));
    ck.require(r3.kmax() <= 0 && !r3.coeff(0).empty() && equal_on_common(r3.coeff(0), expect),
               "third flow is not the quartered identity");
}

void soliton_certificates(Checker& ck) {
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
        SeededRng rng(seed);
        const auto spec = random_kdv_spec(rng, 2, 2, 2, 8, 4);
        const auto ys = soliton_generators(spec);
        const auto phi = dressing_operator(spec, ys);
        for (const auto& y : ys) {
            const auto r = phi.apply(y);
            ck.require(r.order1() >= 1 && r.order2() >= 1 && r.is_zero(),
                       "dressing operator does not annihilate a generator");
        }
        const auto sol = kdv_u(spec); // dual formula + residual checked inside
        ck.require(sol.u.order1() >= 2 && sol.u.order2() >= 2, "solution window too small");

        const auto l = dressed_l(phi, 4);
        const auto l2 = psdo_power(l, 2);
        const auto minus = psdo_split(l2).second;
        ck.require(minus.kmin() <= -1 && minus.is_zero_stored(),
                   "square of the dressed operator has a negative part");
        ck.require(equal_on_common(l2.coeff(0), sol.u) && l2.coeff(1).is_zero(),
                   "square of the dressed operator is not the expected form");
        ck.require(kp_flow_matches_time_derivative(l, 3, vars::t),
                   "time derivative does not match the flow bracket");
    }
}

void commutative_degenerations(Checker& ck) {
    SolitonSpec one;
    one.count = 1;
    one.x_order = 9;
    one.t_order = 4;
    one.alphas = {AlgebraElement::scalar(1, Rational(1))};
    one.betas = {AlgebraElement::scalar(1, Rational(-1))};
    one.amps = {AlgebraElement::scalar(1, Rational(1))};
    ck.require(commutative_tau_check(one), "tau form differs for one soliton");

    SolitonSpec two;
    two.count = 2;
    two.x_order = 9;
    two.t_order = 4;
    two.alphas = {AlgebraElement::scalar(1, Rational(1)), AlgebraElement::scalar(1, Rational(2))};
    two.betas = {AlgebraElement::scalar(1, Rational(-1)), AlgebraElement::scalar(1, Rational(-2))};
    two.amps = {AlgebraElement::scalar(1, Rational(1)), AlgebraElement::scalar(1, Rational(2))};
    ck.require(commutative_tau_check(two), "tau form differs for two solitons");

    const auto u = kdv_u(one).u;
    ck.require(u.coeff_or_zero(0, 0).at(0, 0) == Rational(2), "peak value is not 2");
    const auto rep = classical_sech_check(Rational(1), Rational(1), 16, 0.5, 8);
    ck.require(rep.points >= 25, "grid too small");
    ck.require(rep.max_abs_deviation < 1e-9, "deviation from the classical profile too large");
}

void cli_determinism(Checker& ck) {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "ncalg_acceptance";
    fs::create_directories(dir);

    // re-running the same job must leave byte-identical files behind
    JobConfig cfg;
    cfg.command = "toda-solve";
    cfg.type = "A";
    cfg.n = 3;
    cfg.dim = 2;
    cfg.order1 = cfg.order2 = 6;
    cfg.seed = 42;
    cfg.out_report = (dir / "a.json").string();
    cfg.out_bundle = (dir / "a.txt").string();
    const auto r1 = run_job(cfg);
    const std::string report1 = slurp(dir / "a.json"), bundle1 = slurp(dir / "a.txt");
    const auto r2 = run_job(cfg);
    ck.require(r1.exit_code == 0 && r2.exit_code == 0, "reference job failed");
    ck.require(r1.report.text() == r2.report.text(), "in-process reports differ");
    ck.require(!report1.empty() && report1 == slurp(dir / "a.json"), "report files differ");
    ck.require(!bundle1.empty() && bundle1 == slurp(dir / "a.txt"), "bundles differ");

    JobConfig csvjob;
    csvjob.command = "kdv-soliton";
    csvjob.n = 1;
    csvjob.dim = 1;
    csvjob.order1 = 8;
    csvjob.order2 = 4;
    csvjob.seed = 7;
    csvjob.grid_steps = 10;
    csvjob.out_csv = (dir / "g.csv").string();
    (void)run_job(csvjob);
    const std::string csv1 = slurp(dir / "g.csv");
    (void)run_job(csvjob);
    ck.require(!csv1.empty() && csv1 == slurp(dir / "g.csv"), "CSV artifacts differ");

#ifdef NCALG_CLI_BIN
    const std::string bin = NCALG_CLI_BIN;
    const std::string path = (dir / "v.json").string();
    const std::string invoke = bin + " vieta --n 3 --dim 2 --seed 1 --out " + path + " > /dev/null";
    ck.require(std::system(invoke.c_str()) == 0, "CLI invocation failed");
    const std::string v1 = slurp(path);
    ck.require(std::system(invoke.c_str()) == 0, "CLI invocation failed");
    ck.require(!v1.empty() && v1 == slurp(path), "CLI report files differ");
#endif
}

} // namespace

int main() {
    criterion(1, "factorization round-trip, 20 seeds", 5, factorization_round_trip);
    criterion(2, "kernel normalization, 20 seeds", 5, kernel_normalization);
    criterion(3, "left-root coefficient identities, 20 seeds", 10, vieta_identities);
    criterion(4, "type-A solver certificates, 10 seeds", 30, toda_type_a);
    criterion(5, "types B and C with symmetry and closed form", 20, toda_types_b_c);
    criterion(6, "infinite recursion and separable rank", 10, infinite_recursion_and_rank);
    criterion(7, "factorization-flow form", 10, flow_form);
    criterion(8, "operator calculus and reduced flows", 30, kp_nkdv_calculus);
    criterion(9, "two-soliton certificates", 60, soliton_certificates);
    criterion(10, "commutative degenerations", 10, commutative_degenerations);
    criterion(11, "byte-identical reruns", 30, cli_determinism);
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
