#include "webtensor/report.hpp"

#include <json.hpp>

#include <ostream>

namespace webtensor {

std::string status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Erratum: return "erratum";
  }
  return "unknown";
}

void Report::pass(const std::string& name, const std::string& note) {
  add({name, CheckStatus::Pass, "", "", "", note});
}

void Report::fail(const std::string& name, const std::string& witness,
                  const std::string& expected, const std::string& actual,
                  const std::string& note) {
  add({name, CheckStatus::Fail, witness, expected, actual, note});
}

void Report::erratum(const std::string& name, const std::string& witness,
                     const std::string& expected, const std::string& actual,
                     const std::string& note) {
  add({name, CheckStatus::Erratum, witness, expected, actual, note});
}

void Report::merge(const Report& other) {
  records.insert(records.end(), other.records.begin(), other.records.end());
}

std::size_t Report::count(CheckStatus s) const {
  std::size_t n = 0;
  for (const auto& rec : records)
    if (rec.status == s) ++n;
  return n;
}

bool Report::all_pass(bool strict) const {
  for (const auto& rec : records) {
    if (rec.status == CheckStatus::Fail) return false;
    if (strict && rec.status == CheckStatus::Erratum) return false;
  }
  return true;
}

void render_human(const Report& report, std::ostream& out, bool strict) {
  for (const auto& rec : report.records) {
    out << "[" << status_name(rec.status) << "] " << rec.name;
    if (!rec.witness.empty()) out << "  at " << rec.witness;
    if (!rec.expected.empty()) out << "  expected " << rec.expected;
    if (!rec.actual.empty()) out << "  actual " << rec.actual;
    if (!rec.note.empty()) out << "  (" << rec.note << ")";
    out << "\n";
  }
  out << "summary: " << report.records.size() << " checks, "
      << report.count(CheckStatus::Pass) << " pass, "
      << report.count(CheckStatus::Fail) << " fail, "
      << report.count(CheckStatus::Erratum) << " erratum"
      << (strict ? " (strict: errata count as failures)" : "") << "\n";
  out << "result: " << (report.all_pass(strict) ? "PASS" : "FAIL") << "\n";
}

void render_records(const Report& report, std::ostream& out, bool strict) {
  for (const auto& rec : report.records) {
    nlohmann::ordered_json j;
    j["record"] = "check";
    j["name"] = rec.name;
    j["status"] = status_name(rec.status);
    j["witness"] = rec.witness;
    j["expected"] = rec.expected;
    j["actual"] = rec.actual;
    j["note"] = rec.note;
    out << j.dump() << "\n";
  }
  nlohmann::ordered_json j;
  j["record"] = "summary";
  j["checks"] = report.records.size();
  j["pass"] = report.count(CheckStatus::Pass);
  j["fail"] = report.count(CheckStatus::Fail);
  j["erratum"] = report.count(CheckStatus::Erratum);
  j["strict"] = strict;
  j["result"] = report.all_pass(strict) ? "PASS" : "FAIL";
  out << j.dump() << "\n";
}

}  // namespace webtensor
