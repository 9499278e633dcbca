// Command-line front end: heap-transform construction, state transfer,
// the nesting pipeline with seeded sampling, copier checks, and the
// reproduction suite. Exit codes: 0 ok, 1 validation, 2 I/O,
// 3 verification failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qnest/cloning.hpp"
#include "qnest/errors.hpp"
#include "qnest/gates.hpp"
#include "qnest/heap_transform.hpp"
#include "qnest/io.hpp"
#include "qnest/nesting.hpp"
#include "qnest/state_vector.hpp"
#include "qnest/verification.hpp"

namespace {

using qnest::json;

std::vector<double> parse_inline_values(const std::string& text) {
    std::vector<double> values;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = text.find(',', pos);
        const std::string token =
            text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
        try {
            std::size_t used = 0;
            const double v = std::stod(token, &used);
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) {
                ++used;
            }
            if (used != token.size()) throw std::invalid_argument(token);
            values.push_back(v);
        } catch (const std::exception&) {
            throw qnest::ValidationError("cannot parse amplitude \"" + token + "\"");
        }
        if (comma == std::string::npos) break;
        pos = comma + 1;
    }
    return values;
}

// Hand-typed inputs copied from 4-decimal tables land within ~1e-5 of unit
// norm; accept up to 1e-4 and rescale exactly before touching the library.
constexpr double kTablePrecisionTolerance = 1e-4;

std::vector<double> normalize_table_vector(std::vector<double> v, const char* what) {
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    const double norm = std::sqrt(norm_sq);
    if (std::abs(norm - 1.0) > kTablePrecisionTolerance) {
        throw qnest::ValidationError(std::string(what) + ": vector is not unit (norm " +
                                     std::to_string(norm) + ")");
    }
    for (double& x : v) x /= norm;
    return v;
}

qnest::Qubit table_qubit(double a, double b, const char* what) {
    const std::vector<double> v = normalize_table_vector({a, b}, what);
    return qnest::Qubit(v[0], v[1]);
}

void print_matrix(const qnest::UnitaryMatrix& m, int precision) {
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = 0; c < m.dim(); ++c) {
            std::printf("%*.*f", precision + 8, precision, m(r, c));
        }
        std::printf("\n");
    }
}

void print_chain(const qnest::RotationChain& chain) {
    for (const auto& r : chain.rotations()) {
        std::printf("  plane (%zu,%zu)  %8.2f deg\n", r.p, r.q, r.degrees());
    }
}

std::vector<double> load_generator(const std::string& inline_values, const std::string& file) {
    if (!inline_values.empty()) {
        std::vector<double> v = parse_inline_values(inline_values);
        if (v.size() < 2) {
            throw qnest::ValidationError("dsiht: generator needs at least 2 components");
        }
        return normalize_table_vector(std::move(v), "dsiht generator");
    }
    return qnest::state_from_json(qnest::read_json_file(file)).amplitudes();
}

int cmd_dsiht(const std::string& inline_values, const std::string& generator_file,
              const std::string& chain_out, const std::string& matrix_out,
              const std::string& format, int precision) {
    const std::vector<double> generator = load_generator(inline_values, generator_file);
    const qnest::RotationChain chain = qnest::dsiht_chain(generator);
    const qnest::UnitaryMatrix matrix = qnest::chain_matrix(chain);

    if (!chain_out.empty()) qnest::write_json_file(chain_out, qnest::chain_to_json(chain));
    if (!matrix_out.empty()) qnest::write_json_file(matrix_out, qnest::matrix_to_json(matrix));

    if (format == "json") {
        json doc{{"chain", qnest::chain_to_json(chain)}, {"matrix", qnest::matrix_to_json(matrix)}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("rotations:\n");
        print_chain(chain);
        std::printf("matrix:\n");
        print_matrix(matrix, precision);
    }
    return 0;
}

int cmd_transfer(const std::string& from_file, const std::string& to_file,
                 const std::string& output, const std::string& format, int precision) {
    const qnest::StateVector from = qnest::state_from_json(qnest::read_json_file(from_file));
    const qnest::StateVector to = qnest::state_from_json(qnest::read_json_file(to_file));
    if (from.num_qubits() != to.num_qubits()) {
        throw qnest::ValidationError("transfer: states have different qubit counts");
    }
    const qnest::UnitaryMatrix u = qnest::transfer_unitary(from.amplitudes(), to.amplitudes());
    const std::vector<double> mapped = u.apply(from.amplitudes());
    double residual = 0.0;
    for (std::size_t i = 0; i < mapped.size(); ++i) {
        residual = std::max(residual, std::abs(mapped[i] - to[i]));
    }

    if (!output.empty()) qnest::write_json_file(output, qnest::matrix_to_json(u));
    if (format == "json") {
        json doc{{"matrix", qnest::matrix_to_json(u)}, {"residual", residual}};
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("matrix:\n");
        print_matrix(u, precision);
        std::printf("residual max|U*from - to| = %.3e\n", residual);
    }
    return 0;
}

json qubit_json(const qnest::Qubit& q) { return json{{"a", q.a()}, {"b", q.b()}}; }

int cmd_nest(double a, double b, bool renormalize, std::uint64_t shots, std::uint64_t seed,
             const std::string& transcript_out, const std::string& histogram_out,
             const std::string& format) {
    if (renormalize) {
        const double norm = std::sqrt(a * a + b * b);
        if (norm == 0.0) throw qnest::ValidationError("nest: cannot renormalize (0, 0)");
        a /= norm;
        b /= norm;
    }
    const qnest::Qubit input(a, b); // validates the unit norm
    if (shots < 1) throw qnest::ValidationError("nest: shots must be >= 1");

    qnest::ShotRng rng(seed);
    const qnest::NestingRun run = qnest::run_nesting(input, rng);
    const qnest::ShotHistogram hist = qnest::sample(input, shots, seed);

    json transcript{{"input", qubit_json(run.input)},
                    {"seed", seed},
                    {"shots", shots},
                    {"psi", qnest::state_to_json(run.psi)},
                    {"chi", qnest::state_to_json(run.chi)},
                    {"xi", qnest::state_to_json(run.xi)},
                    {"run",
                     {{"m", run.record.outcome},
                      {"probability", run.record.probability},
                      {"doubled", qnest::state_to_json(run.extracted)},
                      {"residual", qnest::state_to_json(qnest::StateVector::basis_state(1, 0))},
                      {"recovered", qubit_json(run.recovered)}}},
                    {"histogram",
                     {{"m0", hist.counts[0]}, {"m1", hist.counts[1]}}}};

    if (!transcript_out.empty()) qnest::write_json_file(transcript_out, transcript);
    if (!histogram_out.empty()) qnest::write_text_file(histogram_out, qnest::histogram_csv(hist));

    if (format == "json") {
        std::cout << transcript.dump(2) << "\n";
    } else {
        std::printf("measured M = %d (probability %.6f), recovered (a, b) = (%.6f, %.6f)\n",
                    run.record.outcome, run.record.probability, run.recovered.a(),
                    run.recovered.b());
        std::fputs(qnest::histogram_csv(hist).c_str(), stdout);
    }
    return 0;
}

int cmd_copycheck(double a, double b, bool has_c, double c, bool has_d, double d, int sweep,
                  bool use_hadamard_copier, const std::string& output,
                  const std::string& format) {
    const qnest::Qubit source = table_qubit(a, b, "copycheck source");
    const qnest::UnitaryMatrix copier =
        use_hadamard_copier ? qnest::hadamard_copier() : qnest::copier_for(source);

    if (sweep > 0) {
        const std::vector<qnest::SweepPoint> points = qnest::sweep_copier(copier, sweep);
        const std::string csv = qnest::sweep_csv(points);
        if (!output.empty()) {
            qnest::write_text_file(output, csv);
        } else {
            std::fputs(csv.c_str(), stdout);
        }
        return 0;
    }

    if (has_c != has_d) {
        throw qnest::ValidationError("copycheck: --c and --d must be given together");
    }
    const qnest::Qubit test = has_c ? table_qubit(c, d, "copycheck test qubit") : source;
    qnest::CopierReport report = qnest::clone_fidelity(copier, test);
    if (!use_hadamard_copier) report.built_for = source;

    json doc{{"copier", qnest::matrix_to_json(report.copier)},
             {"hand_built", use_hadamard_copier},
             {"tested_on", qubit_json(report.tested_on)},
             {"overlap", report.overlap},
             {"fidelity", report.fidelity},
             {"exact", report.exact}};
    if (report.built_for) doc["built_for"] = qubit_json(*report.built_for);

    if (!output.empty()) qnest::write_json_file(output, doc);
    if (format == "json") {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::printf("fidelity = %.12f (overlap %+.12f), exact copy: %s\n", report.fidelity,
                    report.overlap, report.exact ? "yes" : "no");
    }
    return 0;
}

qnest::VerificationFixtures load_fixtures(const std::string& path) {
    qnest::VerificationFixtures fx;
    if (path.empty()) return fx;
    const json doc = qnest::read_json_file(path);
    if (!doc.is_object()) throw qnest::ValidationError("fixtures: expected a JSON object");
    for (const auto& [key, value] : doc.items()) {
        if (key == "bell_heap") {
            fx.bell_heap = qnest::matrix_from_json(value);
        } else if (key == "uniform_heap") {
            fx.uniform_heap = qnest::matrix_from_json(value);
        } else if (key == "transfer") {
            fx.transfer = qnest::matrix_from_json(value);
        } else if (key == "pythagorean") {
            fx.pythagorean = qnest::matrix_from_json(value);
        } else if (key == "strong_copier") {
            fx.strong_copier = qnest::matrix_from_json(value);
        } else {
            throw qnest::ValidationError("fixtures: unknown key \"" + key + "\"");
        }
    }
    return fx;
}

int cmd_verify(const std::string& fixtures_file) {
    const std::vector<qnest::CheckResult> results =
        qnest::run_verification(load_fixtures(fixtures_file));
    for (const auto& r : results) {
        std::printf("[%s] %d %s: residual %.3e (tol %.1e)\n", r.passed ? "PASS" : "FAIL",
                    r.criterion, r.name.c_str(), r.measured, r.tolerance);
    }
    const bool ok = qnest::all_passed(results);
    std::printf("%s\n", ok ? "all checks passed" : "verification FAILED");
    return ok ? 0 : 3;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"deterministic real-amplitude state-vector engine"};
    app.require_subcommand(1);

    // dsiht
    std::string ds_inline, ds_generator, ds_chain_out, ds_matrix_out;
    std::string ds_format = "text";
    int ds_precision = 4;
    auto* dsiht = app.add_subcommand("dsiht", "build a heap-transform rotation chain");
    auto* opt_inline = dsiht->add_option("--inline", ds_inline, "comma-separated generator");
    auto* opt_generator = dsiht->add_option("--generator", ds_generator, "generator state JSON");
    opt_inline->excludes(opt_generator);
    dsiht->add_option("--chain-out", ds_chain_out, "write the rotation chain JSON here");
    dsiht->add_option("--matrix-out", ds_matrix_out, "write the dense matrix JSON here");
    dsiht->add_option("--format", ds_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    dsiht->add_option("--precision", ds_precision, "text matrix decimals")
        ->check(CLI::Range(0, 17));

    // transfer
    std::string tr_from, tr_to, tr_output;
    std::string tr_format = "text";
    int tr_precision = 4;
    auto* transfer = app.add_subcommand("transfer", "unitary carrying one state onto another");
    transfer->add_option("--from", tr_from, "source state JSON")->required();
    transfer->add_option("--to", tr_to, "target state JSON")->required();
    transfer->add_option("--output", tr_output, "write the matrix JSON here");
    transfer->add_option("--format", tr_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));
    transfer->add_option("--precision", tr_precision, "text matrix decimals")
        ->check(CLI::Range(0, 17));

    // nest
    double ne_a = 0.0, ne_b = 0.0;
    bool ne_renormalize = false;
    std::uint64_t ne_shots = 0, ne_seed = 0;
    std::string ne_transcript, ne_histogram;
    std::string ne_format = "text";
    auto* nest = app.add_subcommand("nest", "run the nesting pipeline and sample measurements");
    nest->add_option("--a", ne_a, "amplitude of |0>")->required();
    nest->add_option("--b", ne_b, "amplitude of |1>")->required();
    nest->add_flag("--renormalize", ne_renormalize, "rescale (a, b) to unit norm");
    nest->add_option("--shots", ne_shots, "number of measurement shots")->required();
    nest->add_option("--seed", ne_seed, "64-bit stream seed")->required();
    nest->add_option("--transcript", ne_transcript, "write the run transcript JSON here");
    nest->add_option("--histogram", ne_histogram, "write the histogram CSV here");
    nest->add_option("--format", ne_format, "text|json")->check(CLI::IsMember({"text", "json"}));

    // copycheck
    double cc_a = 0.0, cc_b = 0.0, cc_c = 0.0, cc_d = 0.0;
    int cc_sweep = 0;
    bool cc_hadamard = false;
    std::string cc_output;
    std::string cc_format = "text";
    auto* copycheck = app.add_subcommand("copycheck", "fidelity of a per-state copier");
    copycheck->add_option("--a", cc_a, "source amplitude of |0>")->required();
    copycheck->add_option("--b", cc_b, "source amplitude of |1>")->required();
    auto* opt_c = copycheck->add_option("--c", cc_c, "test amplitude of |0>");
    auto* opt_d = copycheck->add_option("--d", cc_d, "test amplitude of |1>");
    copycheck->add_option("--sweep", cc_sweep, "sweep the unit circle with this many points")
        ->check(CLI::Range(2, 1000000));
    copycheck->add_flag("--hadamard-copier", cc_hadamard,
                        "use the hand-built copier for (|0> +- |1>)/sqrt2");
    copycheck->add_option("--output", cc_output, "write the report JSON / sweep CSV here");
    copycheck->add_option("--format", cc_format, "text|json")
        ->check(CLI::IsMember({"text", "json"}));

    // verify
    std::string ve_fixtures;
    auto* verify = app.add_subcommand("verify", "run the full reproduction suite");
    verify->add_option("--fixtures", ve_fixtures,
                       "JSON overriding reference matrices (harness hook)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1; // usage problems are validation failures
    }

    try {
        if (dsiht->parsed()) {
            if (ds_inline.empty() && ds_generator.empty()) {
                throw qnest::ValidationError("dsiht: provide --inline or --generator");
            }
            return cmd_dsiht(ds_inline, ds_generator, ds_chain_out, ds_matrix_out, ds_format,
                             ds_precision);
        }
        if (transfer->parsed()) {
            return cmd_transfer(tr_from, tr_to, tr_output, tr_format, tr_precision);
        }
        if (nest->parsed()) {
            return cmd_nest(ne_a, ne_b, ne_renormalize, ne_shots, ne_seed, ne_transcript,
                            ne_histogram, ne_format);
        }
        if (copycheck->parsed()) {
            return cmd_copycheck(cc_a, cc_b, opt_c->count() > 0, cc_c, opt_d->count() > 0, cc_d,
                                 cc_sweep, cc_hadamard, cc_output, cc_format);
        }
        if (verify->parsed()) {
            return cmd_verify(ve_fixtures);
        }
    } catch (const qnest::ValidationError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const qnest::IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
