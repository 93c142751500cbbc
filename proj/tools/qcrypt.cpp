// qcrypt: command-line front end exposing every computation of the library
// as a subcommand with machine-readable output. Results go to stdout (or a
// file via -o); diagnostics go to stderr. Exit codes: 0 success, 2 invalid
// input, 3 numerical non-convergence.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "qcrypt/cli_catalog.hpp"
#include "qcrypt/noisyot.hpp"
#include "qcrypt/pistar.hpp"
#include "qcrypt/serialize.hpp"

namespace qc = qcrypt;
using qc::json;

namespace {

// Floats are emitted with seven digits after the point (seven significant
// digits for sub-1e-4 magnitudes), which keeps output byte-stable.
double round_out(double x) {
    char buf[64];
    if (x == 0.0 || std::abs(x) >= 1e-4)
        std::snprintf(buf, sizeof(buf), "%.7f", x);
    else
        std::snprintf(buf, sizeof(buf), "%.7g", x);
    return std::atof(buf);
}

std::string format_csv(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.7g", x);
    return buf;
}

struct Output {
    std::string format = "json";
    std::string path;

    void emit(const json& doc, const std::string& csv = "") const {
        std::string text;
        if (format == "json") {
            text = doc.dump(2) + "\n";
        } else if (format == "csv") {
            text = csv.empty() ? flatten_csv(doc) : csv;
        } else {
            text = pretty(doc);
        }
        if (path.empty()) {
            std::fputs(text.c_str(), stdout);
        } else {
            std::ofstream out(path);
            if (!out) throw qc::ValidationError("cannot open output path: " + path);
            out << text;
        }
    }

    static std::string flatten_csv(const json& doc) {
        std::ostringstream keys, values;
        bool first = true;
        for (auto it = doc.begin(); it != doc.end(); ++it) {
            if (!it->is_primitive()) continue;
            if (!first) {
                keys << ",";
                values << ",";
            }
            first = false;
            keys << it.key();
            if (it->is_number_float())
                values << format_csv(it->get<double>());
            else
                values << it->dump();
        }
        return keys.str() + "\n" + values.str() + "\n";
    }

    static std::string pretty(const json& doc) {
        std::ostringstream out;
        for (auto it = doc.begin(); it != doc.end(); ++it) out << it.key() << ": " << it->dump() << "\n";
        return out.str();
    }
};

qc::MubSet latin_mub_resolved(int s, const std::vector<std::string>& files) {
    std::vector<qc::LatinSquare> squares;
    for (const auto& f : files) {
        std::ifstream in(f);
        if (!in) throw qc::ValidationError("cannot read Latin square file: " + f);
        std::stringstream ss;
        ss << in.rdbuf();
        squares.push_back(qc::parse_latin_square(ss.str()));
    }
    if (squares.empty() && s == 3) {
        squares.push_back(qc::parse_latin_square("1 2 3\n2 3 1\n3 1 2"));
        squares.push_back(qc::parse_latin_square("1 2 3\n3 1 2\n2 3 1"));
    }
    return qc::latin_square_mub(s, squares, true);
}

qc::XorGame builtin_game(const std::string& name) {
    if (name == "chsh") return qc::chsh_game();
    if (name.rfind("chained:", 0) == 0) return qc::chained_game(std::stoi(name.substr(8)));
    if (name.rfind("gisin:", 0) == 0) return qc::gisin_game(std::stoi(name.substr(6)));
    throw qc::ValidationError("unknown built-in game: " + name);
}

std::vector<int> builtin_function(const std::string& name, int n) {
    if (name == "and") return qc::function_table_and(n);
    if (name == "xor") return qc::function_table_xor(n);
    if (name.rfind("bit:", 0) == 0) return qc::function_table_bit(n, std::stoi(name.substr(4)));
    throw qc::ValidationError("unknown built-in function: " + name);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"qcrypt: verification toolkit for quantum-cryptographic bounds"};
    app.require_subcommand(1);

    Output out;
    uint64_t seed = qc::Rng::kDefaultSeed;
    if (const char* env = std::getenv("QCRYPT_SEED")) seed = std::strtoull(env, nullptr, 10);
    app.add_option("--format", out.format, "Output format")->check(CLI::IsMember({"json", "csv", "pretty"}));
    app.add_option("-o,--output", out.path, "Write the result document to a file");
    app.add_option("--seed", seed, "Random seed (QCRYPT_SEED overrides the default)");

    json doc;
    std::string csv;

    // tsirelson
    auto* tsirelson = app.add_subcommand("tsirelson", "CHSH Tsirelson bound: SDP solve + analytic certificate");
    tsirelson->callback([&] {
        const qc::sdp::Problem p = qc::game_gram_problem(qc::chsh_game());
        // The game SDP carries the probability weights; rescale to the raw
        // correlation form with W entries +-1.
        qc::sdp::Problem raw = p;
        raw.C = 8.0 * p.C;
        const qc::sdp::Solution s = qc::sdp::solve(raw, 1e-9);
        const double is = 1.0 / std::sqrt(2.0);
        qc::Mat gprime(4, 4,
                       {1, 0, is, is,
                        0, 1, is, -is,
                        is, is, 1, 0,
                        is, -is, 0, 1});
        const auto cert = qc::sdp::verify_certificate(raw, gprime, std::vector<double>(4, is), 1e-9);
        doc["value"] = round_out(s.primal_value);
        doc["certificate"] = cert.optimal ? "optimal" : "not-optimal";
        doc["gap"] = round_out(s.gap);
    });

    // chained-chsh
    auto* chained = app.add_subcommand("chained-chsh", "Chained CHSH correlation bound 2n cos(pi/2n)");
    int chained_n = 3;
    chained->add_option("--n", chained_n, "Number of settings per side")->check(CLI::Range(2, 12));
    chained->callback([&] {
        qc::sdp::Problem p = qc::game_gram_problem(qc::chained_game(chained_n));
        p.C = (4.0 * chained_n) * p.C; // raw correlation weights
        const qc::sdp::Solution s = qc::sdp::solve(p, 1e-9);
        // Analytic certificate.
        std::vector<std::array<double, 2>> v(2 * chained_n);
        for (int k = 1; k <= chained_n; ++k) {
            const double phi = M_PI * (2 * k - 2) / (2.0 * chained_n);
            const double psi = M_PI * (2 * k - 1) / (2.0 * chained_n);
            v[k - 1] = {std::cos(phi), std::sin(phi)};
            v[chained_n + k - 1] = {std::cos(psi), std::sin(psi)};
        }
        qc::Mat g(2 * chained_n, 2 * chained_n);
        for (int i = 0; i < 2 * chained_n; ++i)
            for (int j = 0; j < 2 * chained_n; ++j) g(i, j) = v[i][0] * v[j][0] + v[i][1] * v[j][1];
        const std::vector<double> lambda(2 * chained_n, std::cos(M_PI / (2.0 * chained_n)));
        const auto cert = qc::sdp::verify_certificate(p, g, lambda, 1e-7);
        doc["n"] = chained_n;
        doc["value"] = round_out(s.primal_value);
        doc["analytic"] = round_out(2.0 * chained_n * std::cos(M_PI / (2.0 * chained_n)));
        doc["certificate"] = cert.optimal ? "optimal" : "not-optimal";
    });

    // game
    auto* game = app.add_subcommand("game", "Classical/quantum values of an XOR game");
    std::string game_builtin = "chsh";
    std::string game_file;
    game->add_option("--builtin", game_builtin, "chsh | chained:<n> | gisin:<n>");
    game->add_option("--file", game_file, "JSON game description");
    game->callback([&] {
        qc::XorGame g = [&] {
            if (!game_file.empty()) {
                std::ifstream in(game_file);
                if (!in) throw qc::ValidationError("cannot read game file: " + game_file);
                return qc::game_from_json(json::parse(in));
            }
            return builtin_game(game_builtin);
        }();
        const qc::ClassicalValue c = qc::classical_value(g);
        const qc::QuantumValue q = qc::quantum_value(g, 1e-9);
        doc["classical"] = round_out(c.value);
        doc["classical_correlation"] = round_out(c.correlation);
        doc["quantum"] = round_out(q.value);
        doc["quantum_correlation_bound"] = round_out(q.correlation_bound);
        doc["single_prover_simulation"] = round_out(qc::simulate_single_prover(g, q.xs, q.ys));
    });

    // mub
    auto* mub = app.add_subcommand("mub", "Mutually unbiased basis constructions");
    std::string mub_kind = "standard:1";
    std::vector<std::string> latin_files;
    bool mub_emit = false;
    mub->add_option("--construction", mub_kind, "standard:<n> | pauli:<d> | latin:<s> | product:<n>");
    mub->add_option("--latin-file", latin_files, "Latin square grid files (one per square)");
    mub->add_flag("--emit-bases", mub_emit, "Include the basis vectors in the output");
    mub->callback([&] {
        qc::MubSet m = [&]() -> qc::MubSet {
            const auto colon = mub_kind.find(':');
            if (colon == std::string::npos) throw qc::ValidationError("bad construction: " + mub_kind);
            const std::string kind = mub_kind.substr(0, colon);
            const int arg = std::stoi(mub_kind.substr(colon + 1));
            if (kind == "standard") return qc::standard_bases(arg);
            if (kind == "pauli") return qc::pauli_mub(arg);
            if (kind == "latin") return latin_mub_resolved(arg, latin_files);
            if (kind == "product") {
                if (arg != 1) throw qc::ValidationError("product construction is built from standard:1");
                return qc::product_mub({qc::Mat::identity(2), qc::ops::hadamard(), qc::ops::k_transform()});
            }
            throw qc::ValidationError("unknown construction: " + kind);
        }();
        const qc::MubCheckReport r = m.check(1e-8);
        doc["construction"] = mub_kind;
        doc["dim"] = m.dim();
        doc["bases"] = static_cast<int>(m.size());
        doc["unbiased"] = r.unbiased;
        doc["worst_deviation"] = round_out(r.worst_deviation);
        if (mub_emit) doc["vectors"] = qc::mubset_to_json(m);
    });

    // uncertainty
    auto* unc = app.add_subcommand("uncertainty", "Entropic uncertainty relations");
    bool unc_clifford = false, unc_collision = false;
    int unc_n = 1, unc_k = 2, unc_restarts = 64;
    std::string unc_mub;
    unc->add_flag("--clifford", unc_clifford, "Anti-commuting observable relation");
    unc->add_flag("--collision", unc_collision, "Collision entropy instead of Shannon");
    unc->add_option("--n", unc_n, "Qubits");
    unc->add_option("--k", unc_k, "Number of observables (clifford mode)");
    unc->add_option("--restarts", unc_restarts, "Minimizer restarts");
    unc->add_option("--mub", unc_mub, "MUB relation: standard:<n> | latin:<s> | product:<n> | pauli:<d>");
    unc->callback([&] {
        qc::MinimizerOptions opt;
        opt.seed = seed;
        opt.restarts = unc_restarts;
        if (unc_clifford) {
            const qc::UncertaintyResult r = unc_collision ? qc::clifford_collision_relation(unc_n, unc_k, opt)
                                                          : qc::clifford_shannon_relation(unc_n, unc_k, opt);
            doc["relation"] = r.relation;
            doc["bound"] = round_out(r.bound);
            doc["achieved"] = round_out(r.achieved);
            doc["tight"] = r.tight();
            return;
        }
        qc::MubSet m = [&]() -> qc::MubSet {
            const std::string which = unc_mub.empty() ? "standard:1" : unc_mub;
            const auto colon = which.find(':');
            if (colon == std::string::npos) throw qc::ValidationError("bad MUB construction: " + which);
            const std::string kind = which.substr(0, colon);
            const int arg = std::stoi(which.substr(colon + 1));
            if (kind == "standard") return qc::standard_bases(arg);
            if (kind == "pauli") return qc::pauli_mub(arg);
            if (kind == "latin") return latin_mub_resolved(arg, latin_files);
            if (kind == "product")
                return qc::product_mub({qc::Mat::identity(2), qc::ops::hadamard(), qc::ops::k_transform()});
            throw qc::ValidationError("unknown MUB construction: " + kind);
        }();
        const qc::UncertaintyResult r = qc::min_avg_shannon(m, opt);
        doc = qc::uncertainty_to_json(r, m.dim(), static_cast<int>(m.size()));
        doc["bound"] = round_out(r.bound);
        doc["achieved"] = round_out(r.achieved);
        doc["tight"] = r.tight();
        doc.erase("minimizer");
    });

    // pistar
    auto* pistar = app.add_subcommand("pistar", "State discrimination with post-measurement information");
    std::string pistar_op = "and";
    int pistar_n = 2, pistar_bases = 2;
    std::string pistar_fn = "and";
    std::string pistar_fn_file;
    pistar->add_option("--op", pistar_op, "and | xor | srm | min-storage | helstrom");
    pistar->add_option("--n", pistar_n, "String length")->check(CLI::Range(1, 4));
    pistar->add_option("--bases", pistar_bases, "2 or 3 bases")->check(CLI::IsMember({2, 3}));
    pistar->add_option("--function", pistar_fn, "and | xor | bit:<i> (srm / min-storage)");
    pistar->add_option("--function-file", pistar_fn_file, "JSON function table {\"n\":..,\"table\":[..]}");
    auto resolve_function = [&](int n) {
        if (pistar_fn_file.empty()) return builtin_function(pistar_fn, n);
        std::ifstream in(pistar_fn_file);
        if (!in) throw qc::ValidationError("cannot read function file: " + pistar_fn_file);
        const json j = json::parse(in);
        if (j.at("n").get<int>() != n) throw qc::ValidationError("function file n does not match --n");
        return qc::function_table_from_json(j);
    };
    pistar->callback([&] {
        doc["n"] = pistar_n;
        if (pistar_op == "and") {
            doc["op"] = "pistar-and";
            doc["closed_form"] = round_out(qc::pistar_and_value(pistar_n));
            if (pistar_n <= 3) doc["sdp_value"] = round_out(qc::pistar_and_sdp_value(pistar_n, 1e-9));
        } else if (pistar_op == "xor") {
            const qc::PistarXorValues v = qc::pistar_xor_value(pistar_n, pistar_bases);
            doc["op"] = "pistar-xor";
            doc["bases"] = pistar_bases;
            doc["star"] = round_out(v.star);
            doc["pistar"] = round_out(v.pistar);
            doc["star_direct"] = round_out(qc::pistar_xor_star_direct(pistar_n, pistar_bases));
        } else if (pistar_op == "srm") {
            const auto us = pistar_bases == 2 ? qc::two_basis_unitaries(pistar_n) : qc::three_basis_unitaries(pistar_n);
            const qc::HiddenFunctionEnsemble e(pistar_n, resolve_function(pistar_n), us);
            doc["op"] = "srm";
            doc["function"] = pistar_fn;
            doc["success"] = round_out(qc::srm_success(e));
            doc["closed_form_bound"] = round_out(qc::srm_closed_form_bound(pistar_bases, e.n_outcomes()));
        } else if (pistar_op == "min-storage") {
            const auto us = pistar_bases == 2 ? qc::two_basis_unitaries(pistar_n)
                                              : qc::full_storage_unitaries(pistar_n);
            const qc::HiddenFunctionEnsemble e(pistar_n, resolve_function(pistar_n), us);
            const qc::MinStorageResult r = qc::min_storage(qc::support_projectors(e), seed);
            doc["op"] = "min-storage";
            doc["function"] = pistar_fn;
            doc["qubits"] = r.qubits;
            json ranks = json::array();
            for (int rk : r.blocks.ranks()) ranks.push_back(rk);
            doc["block_ranks"] = ranks;
            doc["commutation_residual"] = round_out(r.commutation_residual);
        } else if (pistar_op == "helstrom") {
            doc["op"] = "helstrom";
            doc["two_basis_bit"] = round_out(qc::star_boolean_upper(2));
            doc["three_basis_bit"] = round_out(qc::star_boolean_upper(3));
        } else {
            throw qc::ValidationError("unknown pistar op: " + pistar_op);
        }
    });

    // locking
    auto* locking = app.add_subcommand("locking", "Accessible-information locking bounds");
    std::string lock_family = "three-basis";
    int lock_n = 2;
    locking->add_option("--family", lock_family,
                        "two-basis | three-basis | latin-square | pauli-prime | product-square");
    locking->add_option("--n", lock_n, "Qubits (two/three-basis) or prime d (pauli-prime)");
    locking->callback([&] {
        qc::LockingResult r = [&]() -> qc::LockingResult {
            if (lock_family == "three-basis")
                return qc::locking_accessible_info(qc::standard_bases(lock_n), qc::LockingFamily::ThreeBasis, seed);
            if (lock_family == "two-basis") {
                const qc::MubSet all = qc::standard_bases(lock_n);
                return qc::locking_accessible_info(qc::MubSet({all[0], all[1]}), qc::LockingFamily::TwoBasis, seed);
            }
            if (lock_family == "latin-square")
                return qc::locking_accessible_info(latin_mub_resolved(3, latin_files), qc::LockingFamily::LatinSquare,
                                                   seed);
            if (lock_family == "pauli-prime") {
                const qc::MubSet all = qc::pauli_mub(lock_n);
                return qc::locking_accessible_info(qc::MubSet({all[0], all[1]}), qc::LockingFamily::PauliPrime, seed);
            }
            if (lock_family == "product-square")
                return qc::locking_accessible_info(
                    qc::product_mub({qc::Mat::identity(2), qc::ops::hadamard(), qc::ops::k_transform()}),
                    qc::LockingFamily::ProductSquare, seed);
            throw qc::ValidationError("unknown locking family: " + lock_family);
        }();
        doc = qc::locking_to_json(r);
        doc["upper"] = round_out(r.upper);
        doc["lower"] = round_out(r.lower);
    });

    // qbsc
    auto* qbsc = app.add_subcommand("qbsc", "Quantum bit-string commitment bounds");
    double qbsc_n = 10, qbsc_a = 1, qbsc_b = 5;
    qbsc->add_option("--n", qbsc_n, "String length");
    qbsc->add_option("--a", qbsc_a, "Binding parameter");
    qbsc->add_option("--b", qbsc_b, "Concealing parameter");
    qbsc->callback([&] {
        const qc::QbscVerdict v = qc::qbsc_impossibility(qbsc_n, qbsc_a, qbsc_b);
        doc["n"] = qbsc_n;
        doc["a"] = qbsc_a;
        doc["b"] = qbsc_b;
        doc["constant"] = round_out(qc::qbsc_constant());
        doc["possible"] = v.possible;
        doc["slack"] = round_out(v.slack);
        // xi of the uniform orthogonal two-bit ensemble as a reference point.
        std::vector<qc::Mat> states;
        for (int k = 0; k < 4; ++k) states.push_back(qc::projector(qc::basis_state(4, k).amplitudes()));
        doc["xi_orthogonal_n2"] = round_out(qc::qbsc_xi(qc::CqState(std::vector<double>(4, 0.25), states), 2));
    });

    // ot-tradeoff
    auto* tradeoff = app.add_subcommand("ot-tradeoff", "Noisy-storage OT security bound (CSV columns: r,p_error,bound,secure)");
    double ot_r = 0.9, ot_perr = 0.01, ot_perase = 0.0;
    int ot_n = 500, ot_ell = 1;
    bool ot_practical = false;
    tradeoff->add_option("--r", ot_r, "Depolarizing storage parameter")->check(CLI::Range(0.0, 1.0));
    tradeoff->add_option("--p-error", ot_perr, "Honest bit-error rate");
    tradeoff->add_option("--n", ot_n, "Transmitted qubits");
    tradeoff->add_option("--ell", ot_ell, "Output string length");
    tradeoff->add_flag("--practical", ot_practical, "Practical protocol with erasures");
    tradeoff->add_option("--p-erase", ot_perase, "Erasure rate (practical)");
    tradeoff->callback([&] {
        const double delta = qc::depolarizing_delta_max(ot_r);
        const int m = ot_practical ? static_cast<int>((1.0 - ot_perase) * ot_n) : ot_n;
        const double bound = ot_practical ? qc::security_bound_practical(m, ot_ell, ot_perr, delta)
                                          : qc::security_bound_perfect(ot_n, ot_ell, delta);
        const double exponent = qc::practical_security_exponent(ot_perr, delta);
        doc["r"] = ot_r;
        doc["p_error"] = ot_perr;
        doc["n"] = ot_n;
        doc["m"] = m;
        doc["ell"] = ot_ell;
        doc["delta_max"] = round_out(delta);
        doc["bound"] = round_out(bound);
        doc["secure"] = exponent < 0.0;
        doc["crossover_p_error"] = round_out(qc::practical_crossover_p_error(delta));
        std::ostringstream c;
        c << "r,p_error,bound,secure\n"
          << format_csv(ot_r) << "," << format_csv(ot_perr) << "," << format_csv(bound) << ","
          << (exponent < 0.0 ? 1 : 0) << "\n";
        csv = c.str();
    });

    // ot-sim
    auto* otsim = app.add_subcommand("ot-sim", "Monte-Carlo OT protocol simulation");
    int sim_trials = 1000;
    std::string sim_attack = "none";
    qc::RotParams rot;
    otsim->add_option("--trials", sim_trials, "Monte-Carlo trials");
    otsim->add_option("--attack", sim_attack, "none | breidbart | store");
    otsim->add_option("--n", rot.n, "Transmitted qubits");
    otsim->add_option("--ell", rot.ell, "Output string length");
    otsim->add_flag("--practical", rot.practical, "Practical protocol");
    otsim->add_option("--p-erase", rot.p_erase, "Erasure rate");
    otsim->add_option("--p-error", rot.p_error, "Bit error rate");
    otsim->add_option("--r", rot.storage_r, "Storage depolarizing parameter (store attack)");
    std::string sim_code = "hamming";
    otsim->add_option("--code", sim_code, "hamming | repetition | none");
    otsim->callback([&] {
        rot.seed = seed;
        rot.code = sim_code == "hamming"      ? qc::CodePreset::Hamming74
                   : sim_code == "repetition" ? qc::CodePreset::Repetition3
                                              : qc::CodePreset::None;
        qc::Attack attack = qc::Attack::None;
        if (sim_attack == "breidbart")
            attack = qc::Attack::Breidbart;
        else if (sim_attack == "store")
            attack = qc::Attack::Store;
        else if (sim_attack != "none")
            throw qc::ValidationError("unknown attack: " + sim_attack);
        const qc::RotStats s = qc::simulate_rot(rot, attack, sim_trials);
        doc["trials"] = s.trials;
        doc["attack"] = sim_attack;
        doc["abort_rate"] = round_out(s.abort_rate);
        if (attack == qc::Attack::None) {
            doc["correctness_rate"] = round_out(s.correctness_rate);
        } else {
            doc["adversary_guess_rate"] = round_out(s.adversary_guess_rate);
            doc["adversary_advantage"] = round_out(s.adversary_advantage);
            doc["delta_sec_bound"] = round_out(s.delta_sec_bound);
        }
    });

    // rac-bound
    auto* rac = app.add_subcommand("rac-bound", "Random-access-code dimension bound");
    int rac_settings = 2, rac_outcomes = 2;
    double rac_p = 0.8535534;
    rac->add_option("--settings", rac_settings, "Number of settings |S|");
    rac->add_option("--outcomes", rac_outcomes, "Alphabet size |A|");
    rac->add_option("--p", rac_p, "Per-setting success probability");
    rac->callback([&] {
        doc["settings"] = rac_settings;
        doc["outcomes"] = rac_outcomes;
        doc["p"] = rac_p;
        doc["log2_dim_lower_bound"] = round_out(qc::rac_dimension_bound(rac_settings, rac_outcomes, rac_p));
    });

    // suites
    auto* suites = app.add_subcommand("suites", "List the acceptance suites (CSV columns: suite,subcommand,operation)");
    suites->callback([&] {
        json rows = json::array();
        for (const auto& row : qc::cli::kSuiteCatalog)
            rows.push_back(json{{"suite", std::string(row.suite)},
                                {"subcommand", std::string(row.subcommand)},
                                {"operation", std::string(row.headline_op)}});
        doc["suites"] = rows;
        doc["count"] = static_cast<int>(qc::cli::kSuiteCatalog.size());
        std::ostringstream c;
        c << "suite,subcommand,operation\n";
        for (const auto& row : qc::cli::kSuiteCatalog)
            c << row.suite << "," << row.subcommand << "," << row.headline_op << "\n";
        csv = c.str();
    });

    // Global options may be given after the subcommand name.
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const qc::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const qc::NonConvergence& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }

    try {
        out.emit(doc, csv);
    } catch (const qc::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 0;
}
