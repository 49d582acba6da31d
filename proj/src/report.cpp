#include "hammerstein/report.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hammer {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::NotCheckable:
      return "not-checkable";
  }
  return "fail";
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

void ConditionReport::merge_verdict(Verdict v) {
  if (v == Verdict::Fail || verdict_ == Verdict::Fail) {
    verdict_ = Verdict::Fail;
  } else if (v == Verdict::NotCheckable) {
    verdict_ = Verdict::NotCheckable;
  }
}

void ConditionReport::set(const std::string& name, double value) {
  for (auto& [k, v] : constants_) {
    if (k == name) {
      v = value;
      return;
    }
  }
  constants_.emplace_back(name, value);
}

void ConditionReport::note(const std::string& name, const std::string& text) {
  for (auto& [k, v] : notes_) {
    if (k == name) {
      v = text;
      return;
    }
  }
  notes_.emplace_back(name, text);
}

bool ConditionReport::has(const std::string& name) const {
  for (const auto& [k, v] : constants_)
    if (k == name) return true;
  return false;
}

double ConditionReport::at(const std::string& name) const {
  for (const auto& [k, v] : constants_)
    if (k == name) return v;
  throw Error("report '" + id_ + "' has no constant '" + name + "'");
}

std::optional<std::string> ConditionReport::note_at(
    const std::string& name) const {
  for (const auto& [k, v] : notes_)
    if (k == name) return v;
  return std::nullopt;
}

void ConditionReport::record_settings(const Settings& s) {
  set("settings.panels", s.panels);
  set("settings.nodes_per_panel", s.nodes_per_panel);
  set("settings.grid_n", s.grid_n);
  set("settings.box_grid", s.box_grid);
  set("settings.tol", s.tol);
}

ConditionReport& ConditionReport::add_clause(ConditionReport clause) {
  merge_verdict(clause.verdict());
  clauses_.push_back(std::move(clause));
  return clauses_.back();
}

const ConditionReport* ConditionReport::clause(const std::string& id) const {
  for (const auto& c : clauses_)
    if (c.id() == id) return &c;
  return nullptr;
}

std::string ConditionReport::to_text(const std::string& prefix) const {
  std::ostringstream out;
  const std::string base = prefix + id_;
  out << base << ".verdict = " << to_string(verdict_) << "\n";
  for (const auto& [k, v] : constants_)
    out << base << "." << k << " = " << format_number(v) << "\n";
  for (const auto& [k, v] : notes_) out << base << "." << k << " = " << v << "\n";
  for (const auto& c : clauses_) out << c.to_text(base + ".");
  return out.str();
}

}  // namespace hammer
