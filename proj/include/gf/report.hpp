#ifndef GF_REPORT_HPP
#define GF_REPORT_HPP

#include <map>
#include <string>
#include <vector>

namespace gf {

// One quantitative check: "measured" is compared against "bound" with
// margin = bound - measured for upper-bound checks. A check passes when
// margin >= -tolerance. Lower-bound and equality checks are expressed by
// choosing measured/bound accordingly before constructing the entry.
struct Check {
    enum class Status { Pass, Fail, Skipped };

    std::string name;
    std::string anchor;   // the estimate being tested, in formula form
    Status status = Status::Pass;
    double measured = 0.0;
    double bound = 0.0;
    double margin = 0.0;
    double tolerance = 0.0;

    static Check upper_bound(std::string name, std::string anchor,
                             double measured, double bound, double tolerance);
    static Check skipped(std::string name, std::string anchor,
                         std::string_view note = {});
    std::string note;  // optional free-form detail (why skipped, context)
};

struct VerificationReport {
    std::vector<Check> checks;
    std::map<std::string, std::string> metadata;

    bool passed() const;
    std::size_t fail_count() const;
    void add(Check c) { checks.push_back(std::move(c)); }
};

VerificationReport merge(const std::vector<VerificationReport>& reports);

enum class ReportFormat { Json, Text };

std::string render(const VerificationReport& report, ReportFormat format);

// Inverse of render(.., Json); used for round-trip checks and by the CLI.
VerificationReport parse_report_json(const std::string& text);

const char* to_string(Check::Status s);

}  // namespace gf

#endif
