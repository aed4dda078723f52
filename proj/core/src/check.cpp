#include "norden/check.hpp"

namespace norden {

std::string to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::Skipped: return "skipped";
    case Status::Info: return "info";
  }
  return "unknown";
}

Check agreement_check(std::string id, std::string suite, const Agreement& a, bool exact,
                      std::string note) {
  Check c;
  c.id = std::move(id);
  c.suite = std::move(suite);
  c.exact = exact;
  c.residual = std::to_string(a.mismatches());
  c.points = a.points();
  c.status = a.mismatches() == 0 ? Status::Pass : Status::Fail;
  std::string counts = "true/true counts " + std::to_string(a.lhs_true()) + "/" + std::to_string(a.rhs_true());
  c.note = note.empty() ? counts : note + "; " + counts;
  return c;
}

Check skipped_check(std::string id, std::string suite, std::string reason) {
  Check c;
  c.id = std::move(id);
  c.suite = std::move(suite);
  c.status = Status::Skipped;
  c.residual = "0";
  c.note = std::move(reason);
  return c;
}

}  // namespace norden
