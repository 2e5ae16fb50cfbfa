#pragma once

#include "hew/energy.hpp"
#include "hew/optimizer.hpp"

#include <string>
#include <vector>

namespace hew {

// Everything a run needs, assembled from the JSON config document:
//
// {
//   "energy":   {"family":"illustrative", "a","b","beta","d","r","s","p","alpha","delta"},
//   "physics":  {"c2","g","mu_star"},
//   "numerics": {"N","M","eps0","tol_grad","max_iter","seed"},
//   "sweep":    {"c2_values":[...], "warm_start":bool},
//   "hypotheses": {"grid":{...}, "constants":{...}}
// }
//
// Every section and key is optional; defaults are filled in. Unknown keys are
// rejected with the offending JSON pointer. M, when given, must equal 2N (the
// dealiasing grid is tied to the mode count).
struct AppConfig {
    IllustrativeParams energy;
    SolveConfig solve;
    std::vector<double> sweep_c2;
    bool sweep_warm_start = true;
    unsigned long seed = 0;
    GridSpec hyp_grid;
    GrowthConstants hyp_constants;
};

AppConfig parse_config(const std::string& text);

// Apply dotted-path overrides of the form "physics.c2=1.6" to a JSON
// document. Values parse as JSON when possible and fall back to strings.
std::string apply_overrides(const std::string& text, const std::vector<std::string>& sets);

} // namespace hew
