#ifndef EXPSOLVE_IO_HPP
#define EXPSOLVE_IO_HPP

#include <string>

#include "json.hpp"

#include "expsolve/solver.hpp"

namespace expsolve {

using json = nlohmann::ordered_json;

/*
 * Scalar text grammar:
 *   RATIONAL := ['-'] digits ['/' digits]
 *   COMPLEX  := RATIONAL | RATIONAL ('+'|'-') RATIONAL 'i' | ['-'] RATIONAL 'i'
 * e.g. "-4/3", "1+1i", "-1i". Decimal forms ("1.5", "2.0e-3", "0.5-0.25i")
 * are additionally accepted and parse as approximate scalars, so emitted
 * numeric-mode documents read back in.
 */
Scalar parse_scalar(const std::string& text);
std::string format_scalar(const Scalar& s);

/*
 * Problem document:
 * {
 *   "order": 3,
 *   "leading": [ {"freq": "0", "coef": "1"} ],          // optional
 *   "coefficients": [ [ {"freq": "1", "coef": "-1"}, ... ],  // A_0
 *                     ... ]                                  // up to A_{n-1}
 * }
 * Scalars are strings, never JSON numbers. Frequencies must be real
 * rationals.
 */
RawProblem problem_from_json(const json& doc);
RawProblem load_problem(const std::string& path);

// Solution document term lists: {"freq": scalar, "zpoly": [scalar, ...]}
// lowest degree first.
json expsum_to_json(const ExpSum& s);
ExpSum expsum_from_json(const json& doc);

struct SolutionDocument {
    std::vector<ExpSum> basis;
    json metadata; // round-tripped untouched
};

SolutionDocument solution_from_json(const json& doc);
SolutionDocument load_solution(const std::string& path);

json root_set_to_json(const RootSet& rs, const std::vector<RootClass>& classes);

} // namespace expsolve

#endif
