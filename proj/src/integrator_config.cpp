#include "nlwalk/dop853.hpp"

namespace nlwalk {

void IntegratorConfig::check() const {
  if (!(rel_tol > 0.0)) throw DomainError("rel_tol must be positive");
  if (!(abs_tol > 0.0)) throw DomainError("abs_tol must be positive");
  if (!(max_step > 0.0)) throw DomainError("max_step must be positive");
  if (!(t_max > 0.0)) throw DomainError("t_max must be positive");
  if (!(sample_dt > 0.0)) throw DomainError("sample_dt must be positive");
  if (sample_dt > t_max) throw DomainError("sample_dt must not exceed t_max");
  if (max_steps <= 0) throw DomainError("max_steps must be positive");
}

}  // namespace nlwalk
