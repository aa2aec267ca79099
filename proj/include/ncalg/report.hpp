#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ncalg/errors.hpp"

namespace ncalg {

/// One machine-checkable statement: name, the equation tag it certifies,
/// pass/fail, and a short deterministic detail string.
struct Certificate {
    std::string certificate;
    std::string paper_tag;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::string command;
    nlohmann::ordered_json config;
    std::vector<Certificate> certificates;

    void add(const std::string& name, const std::string& tag, bool passed,
             const std::string& detail = "") {
        certificates.push_back({name, tag, passed, detail});
    }

    bool all_passed() const {
        for (const auto& c : certificates)
            if (!c.passed) return false;
        return true;
    }

    nlohmann::ordered_json to_json() const {
        nlohmann::ordered_json j;
        j["command"] = command;
        j["config"] = config;
        j["status"] = all_passed() ? "pass" : "fail";
        j["certificates"] = nlohmann::ordered_json::array();
        for (const auto& c : certificates) {
            nlohmann::ordered_json jc;
            jc["certificate"] = c.certificate;
            jc["paper_tag"] = c.paper_tag;
            jc["status"] = c.passed ? "pass" : "fail";
            jc["detail"] = c.detail;
            j["certificates"].push_back(jc);
        }
        return j;
    }

    std::string text() const { return to_json().dump(2) + "\n"; }
};

/// Write-to-temp then rename, so readers never observe a partial file.
inline void atomic_write_text(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    if (target.has_parent_path()) fs::create_directories(target.parent_path());
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp.string() + " for writing");
        os << text;
        if (!os.good()) throw Error("write failed: " + tmp.string());
    }
    fs::rename(tmp, target);
}

} // namespace ncalg
