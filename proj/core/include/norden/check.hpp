#pragma once

// Named residual checks collected into a verification report.

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "norden/numkit/matrix.hpp"
#include "norden/numkit/scalar.hpp"

namespace norden {

enum class Status { Pass, Fail, Skipped, Info };

std::string to_string(Status s);

struct Tolerances {
  double algebraic = 1e-12;
  double differential = 1e-9;
  double ricci = 1e-8;
};

struct Check {
  std::string id;
  std::string suite;
  Status status = Status::Info;
  std::string residual = "0";
  double tolerance = 0.0;
  bool exact = false;
  std::size_t points = 0;
  std::string note;
};

class Report {
 public:
  void add(Check c) { checks_.push_back(std::move(c)); }
  void append(const Report& other) {
    checks_.insert(checks_.end(), other.checks_.begin(), other.checks_.end());
  }
  const std::vector<Check>& checks() const { return checks_; }
  const Check* find(const std::string& id) const {
    for (const auto& c : checks_)
      if (c.id == id) return &c;
    return nullptr;
  }
  std::size_t count(Status s) const {
    std::size_t n = 0;
    for (const auto& c : checks_) n += c.status == s;
    return n;
  }
  bool failed() const { return count(Status::Fail) > 0; }

 private:
  std::vector<Check> checks_;
};

// Running max |x| over everything observed.
template <class S>
class Residual {
 public:
  void observe(const S& x) {
    S a = magnitude(x);
    if (a > max_) max_ = a;
    ++samples_;
  }
  void observe(const Vec<S>& v) {
    for (const auto& x : v) observe(x);
  }
  void merge(const Residual& o) {
    if (o.max_ > max_) max_ = o.max_;
    samples_ += o.samples_;
  }
  bool within(double tol) const {
    if constexpr (is_exact_v<S>) {
      return sgn(max_) == 0;
    } else {
      return !std::isnan(max_) && max_ <= tol;
    }
  }
  const S& value() const { return max_; }
  double as_double() const { return to_double(max_); }
  std::string text() const { return format_scalar(max_); }
  std::size_t samples() const { return samples_; }

 private:
  S max_ = S(0);
  std::size_t samples_ = 0;
};

template <class S>
Check residual_check(std::string id, std::string suite, const Residual<S>& r, double tol,
                     std::size_t points, std::string note = {}) {
  Check c;
  c.id = std::move(id);
  c.suite = std::move(suite);
  c.exact = is_exact_v<S>;
  c.tolerance = c.exact ? 0.0 : tol;
  c.residual = r.text();
  c.points = points;
  c.status = r.within(tol) ? Status::Pass : Status::Fail;
  c.note = std::move(note);
  return c;
}

// Agreement of two boolean verdicts per point; residual counts disagreements.
class Agreement {
 public:
  void observe(bool lhs, bool rhs) {
    ++points_;
    if (lhs != rhs) ++mismatches_;
    if (lhs) ++lhs_true_;
    if (rhs) ++rhs_true_;
  }
  std::size_t mismatches() const { return mismatches_; }
  std::size_t points() const { return points_; }
  std::size_t lhs_true() const { return lhs_true_; }
  std::size_t rhs_true() const { return rhs_true_; }

 private:
  std::size_t points_ = 0, mismatches_ = 0, lhs_true_ = 0, rhs_true_ = 0;
};

Check agreement_check(std::string id, std::string suite, const Agreement& a, bool exact,
                      std::string note = {});

Check skipped_check(std::string id, std::string suite, std::string reason);

}  // namespace norden
