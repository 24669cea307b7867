#pragma once

#include <string>
#include <vector>

#include "rsz/rep.hpp"

namespace rsz {

// Object of the derived category D, modeled as a representation of a P (or
// Qtilde) window together with a homological shift. Sigma M is identified
// with the pull-back of M by one level, so every object has a canonical
// shift-0 form.
struct OrbitObject {
    Representation rep;
    long long shift = 0;
};

// widest window canonicalization is allowed to grow to
inline constexpr long long kWindowCap = 4096;

OrbitObject canonicalize(const OrbitObject& x);

// hom + ext1 of the canonical representatives, with the ext argument pulled
// back one level (the p = 0 and p = 1 terms of the orbit hom)
long long orbit_hom_dim(const OrbitObject& x, const OrbitObject& y);

bool orbit_iso(const OrbitObject& x, const OrbitObject& y);

// Independent oracle: sums dim Hom_D(M, Sigma^p pull_back(N,-p)) over
// |p| <= bound, each summand computed from projective resolutions as the
// degree-p cohomology of the Hom complex.
long long brute_orbit_hom(const OrbitObject& x, const OrbitObject& y, int bound);

// one orbit-hom summand: dim Hom_D(M, Sigma^p N) via the Hom complex of
// two-term projective resolutions (nonzero only for p in {-1,0,1}, and
// p = -1 always computes to zero)
long long derived_hom_dim(const Representation& m, const Representation& n, int p);

struct TransportLine {
    std::string description;
    long long lhs = 0, rhs = 0;
    bool ok = false;
};

struct TransportReport {
    bool ok = true;
    long long grading_period = 0;
    std::vector<TransportLine> lines;
};

// Orbit homs computed in the P picture must agree with the Qtilde picture
// (r >= 1) or with plain hom/ext over Q (r = 0), for sample objects in the
// window and shifts up to max_shift.
TransportReport verify_transport(const GradedQuiver& q, long long jmin, long long jmax,
                                 int max_shift = 3);

} // namespace rsz
