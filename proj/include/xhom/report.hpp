#ifndef XHOM_REPORT_HPP
#define XHOM_REPORT_HPP

#include <chrono>
#include <cstdint>
#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace xhom {

/// One named check: a residual compared against a threshold, or a plain
/// boolean when residual/threshold do not apply (NaN).
struct CheckResult {
    std::string name;
    bool passed = false;
    double residual = std::numeric_limits<double>::quiet_NaN();
    double threshold = std::numeric_limits<double>::quiet_NaN();
    std::string note;
};

/// Deterministic run report: command echo, FNV-1a digest of the inputs,
/// ordered checks and verdicts, meta echoes (seed, grid, tolerance
/// overrides). Wall time is the only nondeterministic field.
class RunReport {
public:
    explicit RunReport(std::string command);

    /// Folds an input (file content, inline parameters) into the digest.
    void ingest(const std::string& name, const std::string& content);
    void set_meta(const std::string& key, const std::string& value);

    void add_check(const std::string& name, bool passed,
                   double residual = std::numeric_limits<double>::quiet_NaN(),
                   double threshold = std::numeric_limits<double>::quiet_NaN(),
                   const std::string& note = "");
    /// Residual-vs-threshold convenience: passed = residual < threshold.
    void add_residual_check(const std::string& name, double residual, double threshold,
                            const std::string& note = "");
    void add_verdict(const std::string& name, const std::string& verdict,
                     const std::string& certificate);

    const std::vector<CheckResult>& checks() const { return checks_; }
    bool all_passed() const;
    std::string digest() const;

    nlohmann::json to_json() const;  // schema "xhom-report/1"
    std::string text() const;

private:
    std::string command_;
    std::uint64_t digest_ = 14695981039346656037ull;  // FNV-1a offset basis
    std::vector<CheckResult> checks_;
    struct Verdict {
        std::string name, verdict, certificate;
    };
    std::vector<Verdict> verdicts_;
    std::map<std::string, std::string> meta_;
    std::chrono::steady_clock::time_point start_;
};

}  // namespace xhom

#endif
