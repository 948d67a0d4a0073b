#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace webtensor {

enum class CheckStatus { Pass, Fail, Erratum };

std::string status_name(CheckStatus s);

// One check outcome. Witness/expected/actual are preformatted exact strings
// (index tuples and rational vectors); empty when not applicable.
struct CheckRecord {
  std::string name;
  CheckStatus status = CheckStatus::Pass;
  std::string witness;
  std::string expected;
  std::string actual;
  std::string note;
};

struct Report {
  std::vector<CheckRecord> records;

  void add(CheckRecord rec) { records.push_back(std::move(rec)); }
  void pass(const std::string& name, const std::string& note = "");
  void fail(const std::string& name, const std::string& witness,
            const std::string& expected, const std::string& actual,
            const std::string& note = "");
  void erratum(const std::string& name, const std::string& witness,
               const std::string& expected, const std::string& actual,
               const std::string& note = "");
  void merge(const Report& other);

  std::size_t count(CheckStatus s) const;
  // strict escalates erratum records to failures
  bool all_pass(bool strict) const;
  int exit_code(bool strict) const { return all_pass(strict) ? 0 : 1; }
};

// Plain-text rendering, one aligned line per record plus a summary line.
void render_human(const Report& report, std::ostream& out, bool strict);
// Line-delimited JSON records with stable field order, then a summary record.
void render_records(const Report& report, std::ostream& out, bool strict);

}  // namespace webtensor
