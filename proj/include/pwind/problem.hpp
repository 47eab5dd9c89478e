#ifndef PWIND_PROBLEM_HPP
#define PWIND_PROBLEM_HPP

#include <string>

#include "pwind/field.hpp"
#include "pwind/forcing.hpp"

namespace pwind {

/// A forced planar system u'(t) = g(u(t)) + p(t) with T-periodic forcing p.
/// The forcing's period is the period used by every downstream map.
struct ProblemSpec {
  PlanarField field;
  Forcing forcing;

  double period() const { return forcing.period(); }
};

Point2 mean_forcing(const Forcing& p);

/// Equivalent problem with zero-mean forcing: field g + mean(p), forcing
/// p - mean(p). The dynamics are identical pointwise.
ProblemSpec reduce_to_zero_mean(const ProblemSpec& problem);

/// JSON serialization. Complex coefficients serialize as [re, im] pairs,
/// lowest degree first; see README for the schema.
std::string problem_to_json(const ProblemSpec& problem);
ProblemSpec problem_from_json(const std::string& text);
ProblemSpec load_problem_file(const std::string& path);

}  // namespace pwind

#endif
