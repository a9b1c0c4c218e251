#pragma once

#include <nlohmann/json.hpp>

#include "mmr/bounds.hpp"
#include "mmr/measures.hpp"
#include "mmr/noise.hpp"
#include "mmr/states.hpp"

namespace mmr {

using Json = nlohmann::ordered_json;

// Documents:
//   state:       {"n": int, "form": "dicke"|"dicke_superposition"|"product"|"dense",
//                 "payload": ...}
//                dicke -> {"k": int}; product -> [theta...];
//                dicke_superposition, dense -> [re0, im0, re1, im1, ...]
//   micro-macro: {"psi0": state, "psi1": state, "qubit_amplitudes": [re0, im0, re1, im1],
//                 "orthogonality_tol": real}
//   density:     {"dims": [2, d], "basis": str, "matrix": row-major interleaved (re, im)}
// Doubles are written in shortest round-trip form, so structured states
// survive a round trip bit for bit. Malformed documents throw std::invalid_argument.

Json to_json(const MssPureState& psi);
MssPureState state_from_json(const Json& doc);

Json to_json(const MicroMacroState& s);
MicroMacroState micro_macro_from_json(const Json& doc);

Json to_json(const BipartiteDensity& rho);
BipartiteDensity density_from_json(const Json& doc);

Json to_json(const OutcomeBranch& branch);
Json to_json(const SymmetricBranchReport& r);
Json to_json(const HessianSpectrum& h);
Json to_json(const SpinMarginals& m);
Json to_json(const MaximizerResult& r);

MaximizerConfig maximizer_config_from_json(const Json& doc);

}  // namespace mmr
