#pragma once

#include <string>
#include <vector>

#include "pim/base.hpp"

namespace pim {

// Built-in verification corpus: potential + base choice pairs exercising all
// three platform presets.
//   airy         s = 0
//   weber        a = 5,                  s = 0
//   coulomb      E = -0.5, Z = 1, l = 0, s = 1
//   radial-free  k = 1, l = 1,           s = -2
struct CorpusEntry {
    std::string name;
    Potential potential;
    BaseSpec spec;
    double lo, hi; // sampling window, comfortably inside the allowed region
};

std::vector<CorpusEntry> builtin_corpus();

struct VerifyOptions {
    // subset of {"identity", "froman-reduction", "anchor-invariance", "wronskian"};
    // empty selection is an error ("no checks selected")
    std::vector<std::string> checks;
    // subset of corpus names; empty selection is an error
    std::vector<std::string> corpus;
    // test fixture: evaluate the identity with the sign of P_s flipped; the
    // identity check must then fail (mutation sanity for the suite itself)
    bool flip_platform_sign = false;
};

struct VerifyCheck {
    std::string name;
    double worst = 0.0;
    double threshold = 0.0;
    std::string worst_at; // corpus entry and z of the worst residual
    bool pass = false;
};

struct VerifyReport {
    std::vector<VerifyCheck> checks;
    bool all_pass = false;
};

// Runs the identity suite over the corpus:
//   identity          |LHS - RHS| of the differential equality   < 1e-9
//   froman-reduction  |2 Y_2 - eps_0| at s = 0 (incl. an override
//                     Q^2 != R case)                             < 1e-9
//   anchor-invariance third-order phase additivity across two
//                     anchors (airy, coulomb)                    < 1e-9
//   wronskian         |W + 2i|, both orders, 20 points each      < 1e-7
VerifyReport run_verify(const VerifyOptions& options = {});

} // namespace pim
