#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace wmod {

inline constexpr const char* kReportSchemaVersion = "1";
inline constexpr const char* kToolVersion = "0.1.0";

struct Band {
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return v >= lo && v <= hi; }
};

/// One experiment row: a parameter tuple plus a single measured comparison.
struct ReportRow {
    std::string quantity;  // what lhs/rhs are
    double alpha = 0.0, beta = 0.0;
    double p = 0.0;  // infinity allowed
    int k = 0, r = 0, n = 0;
    double t = 0.0, A = 0.0;
    std::string func;
    std::uint64_t seed = 0;
    double lhs = 0.0, rhs = 0.0, ratio = 0.0;
    bool in_band = true;
    std::string note;
};

/// Per-experiment table of an inequality/equivalence check with verdict and
/// the metadata needed to re-run bit-identically.
struct VerificationReport {
    std::string experiment_id;
    Band band;
    std::vector<ReportRow> rows;
    double lhs = 0.0, rhs = 0.0, ratio = 1.0;  // worst row
    std::string verdict = "pass";              // pass | fail | informational | not-applicable
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, double>> tolerances;  // named, ordered
    std::vector<std::pair<std::string, std::string>> notes;  // recorded constants etc.
    std::string grids;  // human-readable grid/config record

    bool passed() const { return verdict == "pass" || verdict == "informational" || verdict == "not-applicable"; }

    /// Fill lhs/rhs/ratio from the row whose ratio is most extreme relative
    /// to the band, and set verdict from in_band flags (unless informational).
    void finalize(bool informational = false);
};

std::string report_to_json(const VerificationReport& r);
std::string reports_to_json(const std::vector<VerificationReport>& rs);
std::string report_to_csv(const VerificationReport& r);
std::string reports_to_csv(const std::vector<VerificationReport>& rs);

} // namespace wmod
