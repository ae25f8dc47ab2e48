#include "xhom/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace xhom {

namespace {

std::string res_str(double v) {
    if (std::isnan(v)) return "-";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

}  // namespace

RunReport::RunReport(std::string command)
    : command_(std::move(command)), start_(std::chrono::steady_clock::now()) {}

void RunReport::ingest(const std::string& name, const std::string& content) {
    auto fold = [&](const std::string& s) {
        for (unsigned char c : s) {
            digest_ ^= c;
            digest_ *= 1099511628211ull;
        }
    };
    fold(name);
    fold("\x1f");
    fold(content);
    fold("\x1e");
}

void RunReport::set_meta(const std::string& key, const std::string& value) { meta_[key] = value; }

void RunReport::add_check(const std::string& name, bool passed, double residual, double threshold,
                          const std::string& note) {
    checks_.push_back({name, passed, residual, threshold, note});
}

void RunReport::add_residual_check(const std::string& name, double residual, double threshold,
                                   const std::string& note) {
    checks_.push_back({name, residual < threshold, residual, threshold, note});
}

void RunReport::add_verdict(const std::string& name, const std::string& verdict,
                            const std::string& certificate) {
    verdicts_.push_back({name, verdict, certificate});
}

bool RunReport::all_passed() const {
    for (const auto& c : checks_)
        if (!c.passed) return false;
    return true;
}

std::string RunReport::digest() const {
    char buf[24];
    std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(digest_));
    return buf;
}

nlohmann::json RunReport::to_json() const {
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& c : checks_) {
        nlohmann::json jc = {{"name", c.name}, {"passed", c.passed}};
        if (!std::isnan(c.residual)) jc["residual"] = c.residual;
        if (!std::isnan(c.threshold)) jc["threshold"] = c.threshold;
        if (!c.note.empty()) jc["note"] = c.note;
        checks.push_back(std::move(jc));
    }
    nlohmann::json verdicts = nlohmann::json::array();
    for (const auto& v : verdicts_)
        verdicts.push_back(
            {{"name", v.name}, {"verdict", v.verdict}, {"certificate", v.certificate}});
    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    return {{"schema", "xhom-report/1"}, {"command", command_},  {"inputs_digest", digest()},
            {"meta", meta_},             {"checks", checks},     {"verdicts", verdicts},
            {"all_passed", all_passed()}, {"wall_ms", wall_ms}};
}

std::string RunReport::text() const {
    std::ostringstream os;
    os << "# " << command_ << "  (" << digest() << ")\n";
    for (const auto& [k, v] : meta_) os << "  " << k << " = " << v << "\n";
    std::size_t width = 4;
    for (const auto& c : checks_) width = std::max(width, c.name.size());
    for (const auto& c : checks_) {
        os << (c.passed ? "[PASS] " : "[FAIL] ") << c.name
           << std::string(width - c.name.size() + 2, ' ') << "residual=" << res_str(c.residual);
        if (!std::isnan(c.threshold)) os << " (< " << res_str(c.threshold) << ")";
        if (!c.note.empty()) os << "  " << c.note;
        os << "\n";
    }
    for (const auto& v : verdicts_)
        os << "verdict: " << v.name << ": " << v.verdict << " -- " << v.certificate << "\n";
    os << (all_passed() ? "ALL CHECKS PASSED" : "CHECK FAILURES PRESENT") << "\n";
    return os.str();
}

}  // namespace xhom
