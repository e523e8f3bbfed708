#ifndef EXPSOLVE_ROOTS_HPP
#define EXPSOLVE_ROOTS_HPP

#include <optional>
#include <string>

#include "expsolve/poly.hpp"

namespace expsolve {

struct Root {
    Scalar value;
    int multiplicity = 1;
    bool exact = true;
};

struct RootSet {
    std::vector<Root> roots;
    // True when no further roots of the requested kind can exist: the exact
    // pass ran its candidate enumeration to completion, or the numeric pass
    // accounted for the full degree.
    bool exhaustive = true;

    int total_multiplicity() const;
};

struct RootOptions {
    double cluster_tol = 1e-8;
    double class_tol = 1e-8;
    long snap_denominator_bound = 64;
    long candidate_cap = 100000; // divisor-enumeration cap
    int max_iterations = 400;
};

/*
 * All roots of p lying in Q(i), with multiplicities by repeated deflation.
 * Candidates come from the rational root theorem over the Gaussian integers:
 * after clearing denominators, a root's numerator norm divides the norm of
 * the constant term and its denominator norm divides the norm of the leading
 * term. When the divisor enumeration would exceed the cap the pass returns
 * what it has with exhaustive = false and the numeric + snap path takes
 * over. Roots outside Q(i) are simply not reported here.
 */
RootSet exact_roots(const Poly& p, const RootOptions& opts = {});

// Aberth-Ehrlich simultaneous iteration with multiplicity-adaptive
// clustering and a Newton polish of multiple roots on the appropriate
// derivative. Each reported root satisfies |p(r)| <= cluster_tol * ||p||;
// non-convergence raises numeric_error.
RootSet numeric_roots(const Poly& p, const RootOptions& opts = {});

// Nearby Gaussian rational with denominator <= bound that makes p exactly
// zero, if one exists. Sound by construction: only exactly verified values
// are returned.
std::optional<Scalar> snap_to_exact(std::complex<double> r, const Poly& p,
                                    long denominator_bound);

// Full pipeline: exact pass, exact deflation, numeric pass on the remainder,
// snap attempts whenever the exact enumeration was capped.
RootSet all_roots(const Poly& p, const RootOptions& opts = {});

/*
 * Maximal set of roots whose pairwise differences are integers. base is the
 * member with minimal (re, im), so every offset is a nonnegative integer and
 * offset 0 is present.
 */
struct RootClass {
    Scalar base;
    std::vector<int> offsets;        // sorted ascending, first is 0
    std::vector<int> multiplicities; // parallel to offsets
    bool all_exact = true;
    std::vector<std::string> warnings;

    int total() const;
};

// Partition of a root set by the "difference is an integer" relation
// (exact test where possible, |diff - nearest integer| < class_tol
// otherwise). Order-independent; classes sorted by base.
std::vector<RootClass> group_into_classes(const RootSet& rs, double class_tol = 1e-8);

} // namespace expsolve

#endif
