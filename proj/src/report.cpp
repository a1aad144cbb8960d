#include "gf/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace gf {

Check Check::upper_bound(std::string name, std::string anchor, double measured,
                         double bound, double tolerance) {
    Check c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.measured = measured;
    c.bound = bound;
    c.tolerance = tolerance;
    c.margin = bound - measured;
    bool finite = std::isfinite(measured) && std::isfinite(bound);
    c.status = (finite && c.margin >= -tolerance) ? Status::Pass : Status::Fail;
    return c;
}

Check Check::skipped(std::string name, std::string anchor, std::string_view note) {
    Check c;
    c.name = std::move(name);
    c.anchor = std::move(anchor);
    c.status = Status::Skipped;
    c.note = note;
    return c;
}

bool VerificationReport::passed() const { return fail_count() == 0; }

std::size_t VerificationReport::fail_count() const {
    std::size_t n = 0;
    for (const auto& c : checks)
        if (c.status == Check::Status::Fail) ++n;
    return n;
}

VerificationReport merge(const std::vector<VerificationReport>& reports) {
    VerificationReport out;
    for (const auto& r : reports) {
        out.checks.insert(out.checks.end(), r.checks.begin(), r.checks.end());
        out.metadata.insert(r.metadata.begin(), r.metadata.end());
    }
    return out;
}

const char* to_string(Check::Status s) {
    switch (s) {
        case Check::Status::Pass: return "pass";
        case Check::Status::Fail: return "fail";
        case Check::Status::Skipped: return "skipped";
    }
    return "unknown";
}

namespace {

Check::Status status_from_string(const std::string& s) {
    if (s == "pass") return Check::Status::Pass;
    if (s == "fail") return Check::Status::Fail;
    if (s == "skipped") return Check::Status::Skipped;
    throw std::runtime_error("unknown check status: " + s);
}

nlohmann::ordered_json to_json(const Check& c) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["anchor"] = c.anchor;
    j["status"] = to_string(c.status);
    j["measured"] = c.measured;
    j["bound"] = c.bound;
    j["margin"] = c.margin;
    j["tolerance"] = c.tolerance;
    if (!c.note.empty()) j["note"] = c.note;
    return j;
}

}  // namespace

std::string render(const VerificationReport& report, ReportFormat format) {
    if (format == ReportFormat::Json) {
        nlohmann::ordered_json j;
        j["schema"] = "gf-report/1";
        j["status"] = report.passed() ? "pass" : "fail";
        j["metadata"] = report.metadata;
        j["checks"] = nlohmann::ordered_json::array();
        for (const auto& c : report.checks) j["checks"].push_back(to_json(c));
        return j.dump(2) + "\n";
    }

    std::ostringstream os;
    char line[512];
    std::snprintf(line, sizeof(line), "%-48s %-8s %14s %14s %14s\n", "check",
                  "status", "measured", "bound", "margin");
    os << line;
    for (const auto& c : report.checks) {
        std::snprintf(line, sizeof(line), "%-48s %-8s %14.6g %14.6g %+14.6g\n",
                      c.name.c_str(), to_string(c.status), c.measured, c.bound,
                      c.margin);
        os << line;
    }
    os << "overall: " << (report.passed() ? "pass" : "fail") << " ("
       << report.checks.size() << " checks, " << report.fail_count()
       << " failures)\n";
    return os.str();
}

VerificationReport parse_report_json(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    if (j.value("schema", "") != "gf-report/1")
        throw std::runtime_error("unsupported report schema");
    VerificationReport r;
    for (auto& [k, v] : j.at("metadata").items())
        r.metadata[k] = v.get<std::string>();
    for (auto& jc : j.at("checks")) {
        Check c;
        c.name = jc.at("name").get<std::string>();
        c.anchor = jc.at("anchor").get<std::string>();
        c.status = status_from_string(jc.at("status").get<std::string>());
        c.measured = jc.at("measured").get<double>();
        c.bound = jc.at("bound").get<double>();
        c.margin = jc.at("margin").get<double>();
        c.tolerance = jc.at("tolerance").get<double>();
        c.note = jc.value("note", "");
        r.checks.push_back(std::move(c));
    }
    return r;
}

}  // namespace gf
