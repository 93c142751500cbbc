#pragma once

#include <array>
#include <string_view>

namespace qcrypt::cli {

inline constexpr std::array<std::string_view, 12> kSubcommands = {
    "tsirelson", "chained-chsh", "game",   "mub",         "uncertainty", "pistar",
    "locking",   "qbsc",         "ot-sim", "ot-tradeoff", "rac-bound",   "suites"};

struct SuiteRow {
    std::string_view suite;       // result family reproduced
    std::string_view subcommand;  // the one subcommand that reaches it
    std::string_view headline_op; // library operation exercised
};

// One row per reproduced result family; headline operations appear exactly
// once so that coverage stays auditable.
inline constexpr std::array<SuiteRow, 18> kSuiteCatalog = {{
    {"tsirelson-bound", "tsirelson", "sdp::solve"},
    {"chained-chsh", "chained-chsh", "sdp::verify_certificate"},
    {"chsh-game", "game", "quantum_value"},
    {"classical-game-value", "game", "classical_value"},
    {"single-prover-simulation", "game", "simulate_single_prover"},
    {"xor-composition", "game", "xor_composition_value"},
    {"mub-constructions", "mub", "pauli_mub"},
    {"latin-square-mubs", "mub", "latin_square_mub"},
    {"mub-uncertainty", "uncertainty", "min_avg_shannon"},
    {"clifford-uncertainty", "uncertainty", "clifford_shannon_relation"},
    {"helstrom-closed-forms", "pistar", "helstrom"},
    {"pistar-and", "pistar", "pistar_and_value"},
    {"pistar-xor", "pistar", "pistar_xor_value"},
    {"minimal-storage", "pistar", "min_storage"},
    {"locking", "locking", "locking_accessible_info"},
    {"qbsc-impossibility", "qbsc", "qbsc_impossibility"},
    {"ot-security-tradeoff", "ot-tradeoff", "security_bound_practical"},
    {"ot-simulation", "ot-sim", "simulate_rot"},
}};

} // namespace qcrypt::cli
