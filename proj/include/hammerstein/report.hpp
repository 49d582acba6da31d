#ifndef HAMMERSTEIN_REPORT_HPP_
#define HAMMERSTEIN_REPORT_HPP_

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hammerstein/core.hpp"

namespace hammer {

enum class Verdict { Pass, Fail, NotCheckable };

const char* to_string(Verdict v);

// Outcome of one hypothesis check with every constant that went into it.
// Constants and notes keep insertion order so the text form is stable.
class ConditionReport {
 public:
  ConditionReport() = default;
  explicit ConditionReport(std::string id) : id_(std::move(id)) {}

  const std::string& id() const { return id_; }
  Verdict verdict() const { return verdict_; }
  bool passed() const { return verdict_ == Verdict::Pass; }
  void set_verdict(Verdict v) { verdict_ = v; }

  // Combines the verdict of `v` into this report: any failure fails,
  // an uncheckable clause makes a passing report not checkable.
  void merge_verdict(Verdict v);

  void set(const std::string& name, double value);
  void note(const std::string& name, const std::string& text);
  bool has(const std::string& name) const;
  double at(const std::string& name) const;
  std::optional<std::string> note_at(const std::string& name) const;

  void record_settings(const Settings& s);

  // Adds a sub-report and folds its verdict into this one.
  ConditionReport& add_clause(ConditionReport clause);
  const std::vector<ConditionReport>& clauses() const { return clauses_; }
  const ConditionReport* clause(const std::string& id) const;

  const std::vector<std::pair<std::string, double>>& constants() const {
    return constants_;
  }
  const std::vector<std::pair<std::string, std::string>>& notes() const {
    return notes_;
  }

  // `key = value` lines, keys prefixed by `prefix`.
  std::string to_text(const std::string& prefix = "") const;

 private:
  std::string id_;
  Verdict verdict_ = Verdict::Pass;
  std::vector<std::pair<std::string, double>> constants_;
  std::vector<std::pair<std::string, std::string>> notes_;
  std::vector<ConditionReport> clauses_;
};

std::string format_number(double x);

}  // namespace hammer

#endif  // HAMMERSTEIN_REPORT_HPP_
