#include "wmod/report.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace wmod {

void VerificationReport::finalize(bool informational) {
    bool all_in = true;
    double worst_dist = -1.0;
    for (const ReportRow& row : rows) {
        all_in = all_in && row.in_band;
        // distance of the ratio from the band center, in log scale
        double d;
        if (!row.in_band) {
            d = 1e300;
        } else if (row.ratio > 0.0 && band.lo > 0.0) {
            const double mid = std::sqrt(band.lo * band.hi);
            d = std::abs(std::log(row.ratio / mid));
        } else {
            d = std::abs(row.ratio);
        }
        if (d > worst_dist) {
            worst_dist = d;
            lhs = row.lhs;
            rhs = row.rhs;
            ratio = row.ratio;
        }
    }
    if (informational)
        verdict = "informational";
    else if (rows.empty())
        verdict = "not-applicable";
    else
        verdict = all_in ? "pass" : "fail";
}

namespace {

using json = nlohmann::ordered_json;

json number_or_string(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    return v;
}

json row_to_json(const ReportRow& row) {
    json j;
    j["quantity"] = row.quantity;
    j["alpha"] = number_or_string(row.alpha);
    j["beta"] = number_or_string(row.beta);
    j["p"] = number_or_string(row.p);
    j["k"] = row.k;
    j["r"] = row.r;
    j["n"] = row.n;
    j["t"] = number_or_string(row.t);
    j["A"] = number_or_string(row.A);
    j["func"] = row.func;
    j["seed"] = row.seed;
    j["lhs"] = number_or_string(row.lhs);
    j["rhs"] = number_or_string(row.rhs);
    j["ratio"] = number_or_string(row.ratio);
    j["in_band"] = row.in_band;
    if (!row.note.empty()) j["note"] = row.note;
    return j;
}

json report_to_json_obj(const VerificationReport& r) {
    json j;
    j["schema_version"] = kReportSchemaVersion;
    j["experiment_id"] = r.experiment_id;
    j["params"] = json::array();
    for (const ReportRow& row : r.rows) j["params"].push_back(row_to_json(row));
    j["lhs"] = number_or_string(r.lhs);
    j["rhs"] = number_or_string(r.rhs);
    j["ratio"] = number_or_string(r.ratio);
    j["band"] = {{"lo", number_or_string(r.band.lo)}, {"hi", number_or_string(r.band.hi)}};
    j["verdict"] = r.verdict;
    json tol = json::object();
    for (const auto& [name, v] : r.tolerances) tol[name] = number_or_string(v);
    json notes = json::object();
    for (const auto& [name, v] : r.notes) notes[name] = v;
    j["metadata"] = {{"seed", r.seed},
                     {"grids", r.grids},
                     {"tolerances", tol},
                     {"notes", notes},
                     {"version", kToolVersion}};
    return j;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string fmt_double(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (std::isnan(v)) return "nan";
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

void csv_rows(std::ostream& os, const VerificationReport& r) {
    for (const ReportRow& row : r.rows) {
        os << csv_escape(r.experiment_id) << ',' << csv_escape(row.quantity) << ','
           << fmt_double(row.alpha) << ',' << fmt_double(row.beta) << ',' << fmt_double(row.p) << ','
           << row.k << ',' << row.r << ',' << row.n << ',' << fmt_double(row.t) << ','
           << fmt_double(row.A) << ',' << csv_escape(row.func) << ',' << row.seed << ','
           << fmt_double(row.lhs) << ',' << fmt_double(row.rhs) << ',' << fmt_double(row.ratio)
           << ',' << (row.in_band ? "true" : "false") << ',' << csv_escape(row.note) << '\n';
    }
}

constexpr const char* kCsvHeader =
    "experiment_id,quantity,alpha,beta,p,k,r,n,t,A,func,seed,lhs,rhs,ratio,in_band,note\n";

} // namespace

std::string report_to_json(const VerificationReport& r) { return report_to_json_obj(r).dump(2) + "\n"; }

std::string reports_to_json(const std::vector<VerificationReport>& rs) {
    json arr = json::array();
    for (const VerificationReport& r : rs) arr.push_back(report_to_json_obj(r));
    return arr.dump(2) + "\n";
}

std::string report_to_csv(const VerificationReport& r) {
    std::ostringstream os;
    os << kCsvHeader;
    csv_rows(os, r);
    return os.str();
}

std::string reports_to_csv(const std::vector<VerificationReport>& rs) {
    std::ostringstream os;
    os << kCsvHeader;
    for (const VerificationReport& r : rs) csv_rows(os, r);
    return os.str();
}

} // namespace wmod
