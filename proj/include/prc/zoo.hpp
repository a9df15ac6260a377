#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "prc/metric_spec.hpp"

namespace prc {

// Expected verifier verdict for one catalogue entry.
struct Verdict {
    std::string theorem; // flat | isotropic | reversible | square
    bool expectPass = true;
    double cValue = 0.0; // isotropic only; nan-free: fitC is implied when cFit
    bool cFit = false;
};

struct CatalogueEntry {
    std::string name;
    MetricSpec spec;
    std::vector<Verdict> verdicts;
    std::string notes;
};

// Built-in regression catalogue. Immutable, order fixed.
const std::vector<CatalogueEntry>& catalogue();

const CatalogueEntry& catalogueEntry(const std::string& name);

// Flat metric delta_ij perturbed by a symmetric polynomial of the given
// degree, plus a polynomial 1-form; regenerated (bounded attempts) until
// positive definite with b < 0.9 on a 1000-point probe grid. Deterministic
// per seed; amplitude 0 gives exactly flat b = 0.
MetricSpec randomRanders(std::uint64_t seed, int n, int degree, double amplitude);

} // namespace prc
