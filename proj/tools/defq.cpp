// defq: exact workbench for formal deformation quantization at desk scale.
//
// Subcommands:
//   check-mc   residual of the Maurer-Cartan equation for an element file
//   normalize  acyclic normalization of a weak MC triple to (Pi',1,1)
//   promote    turn a weak quantization into an actual one (a = 1)
//   moyal      emit a constant-coefficient star product element file
//   verify     seeded randomized suites over the built-in fixture models
//
// Exit codes: 0 ok, 1 property failure, 2 parse error, 3 type/degree error,
// 4 oracle failure.
#include "defq/formats.hpp"
#include "defq/normalize.hpp"
#include "defq/promote.hpp"
#include "defq/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>

using namespace defq;
using Json = nlohmann::ordered_json;

namespace {

int run_check_mc(const std::string& path, int order, const std::string& format) {
    LoadedElement loaded = load_element_file(path, order);
    GradedElement residual = mc_residual(loaded.element);
    bool ok = residual.is_zero();
    if (format == "json") {
        Json j;
        j["command"] = "check-mc";
        j["input"] = path;
        j["order"] = loaded.element.order();
        Json per_order = Json::array();
        for (int n = 0; n <= residual.order(); ++n) {
            Json row;
            row["h_power"] = n;
            bool zero = residual.model()->is_zero(2, residual.coeff(n));
            row["zero"] = zero;
            if (!zero) row["value"] = residual.model()->to_string(2, residual.coeff(n));
            per_order.push_back(row);
        }
        j["residual"] = per_order;
        j["passed"] = ok;
        std::cout << j.dump(2) << "\n";
    } else {
        for (int n = 0; n <= residual.order(); ++n) {
            bool zero = residual.model()->is_zero(2, residual.coeff(n));
            std::cout << "h^" << n << ": "
                      << (zero ? "0" : residual.model()->to_string(2, residual.coeff(n))) << "\n";
        }
        std::cout << (ok ? "residual 0 through h^" + std::to_string(residual.order())
                         : "nonzero Maurer-Cartan residual")
                  << "\n";
    }
    return ok ? 0 : 1;
}

int run_normalize(const std::string& path, const std::string& oracle_name, int order,
                  const std::string& out_prefix, const std::string& format) {
    LoadedWeakMC loaded = load_weakmc_file(path, order);
    auto oracle = make_oracle(oracle_name);
    NormalizeResult result = normalize_acyclic(loaded.triple, *oracle);

    std::ostringstream normal, chain;
    write_weakmc_file(normal, result.normal_form, "(as input)", "(as input)", "diffop");
    write_equivalence_chain(chain, result.chain);
    if (!out_prefix.empty()) {
        std::ofstream nf(out_prefix + ".normal.wmc");
        nf << normal.str();
        std::ofstream cf(out_prefix + ".chain.txt");
        cf << chain.str();
    }
    // success path re-validates: apply the chain to the input and compare
    WeakMCTriple replay = loaded.triple;
    for (const auto& e : result.chain) replay = weak_equiv_apply(e, replay);
    bool replay_ok = true;
    for (int i = 0; i < replay.shape->index_count() && replay_ok; ++i)
        replay_ok = ge_equal(replay.pi_at(i), result.normal_form.pi_at(i));
    for (const auto& t : replay.shape->tuples_of_size(2))
        replay_ok = replay_ok &&
                    ge_equal(replay.g_at(t[0], t[1]).log, result.normal_form.g_at(t[0], t[1]).log);
    if (!replay_ok) throw InternalError("equivalence chain does not replay to the normal form");

    if (format == "json") {
        Json j;
        j["command"] = "normalize";
        j["input"] = path;
        j["oracle"] = oracle_name;
        j["normal_form"] = normal.str();
        j["chain"] = chain.str();
        j["transcript"] = result.transcript;
        j["chain_replay_ok"] = replay_ok;
        j["passed"] = true;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << result.transcript;
        std::cout << "chain replay: ok\n";
        std::cout << "--- normal form ---\n" << normal.str();
        std::cout << "--- equivalence chain ---\n" << chain.str();
    }
    return 0;
}

int run_promote(const std::string& path, const std::string& oracle_name, int order,
                const std::string& out_prefix, const std::string& format) {
    LoadedWeakMC loaded = load_weakmc_file(path, order);
    auto oracle = make_oracle(oracle_name);
    ConstantsInvariants invariants;
    PromoteResult result = promote_actual(loaded.triple, invariants, *oracle);
    std::ostringstream actual;
    write_weakmc_file(actual, result.actual, "(as input)", "(as input)", "diffop");
    if (!out_prefix.empty()) {
        std::ofstream af(out_prefix + ".actual.wmc");
        af << actual.str();
    }
    if (format == "json") {
        Json j;
        j["command"] = "promote";
        j["input"] = path;
        j["oracle"] = oracle_name;
        j["actual"] = actual.str();
        j["transcript"] = result.transcript;
        j["passed"] = true;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << result.transcript;
        std::cout << "--- actual deformation ---\n" << actual.str();
    }
    return 0;
}

int run_moyal(const std::string& model_path, const std::string& bivector, int order,
              const std::string& out_path, const std::string& format) {
    AlgebroidPtr algebroid = load_model_file(model_path);
    auto space = std::make_shared<DiffOpDgla>(algebroid);
    ParsedElement pe = parse_element(bivector, algebroid->vars(), algebroid->rank(), 0);
    LPolyVector pi = pv_zero(2);
    for (const auto& [sym, series] : pe) {
        if (sym.kind != BasisSymbol::Kind::PolyVec || sym.indices.size() != 2)
            throw DegreeError("moyal needs a bivector expression in e[i,j] symbols");
        pv_add_term(pi, sym.indices, RatFunc(series.coeff(0)));
    }
    GradedElement star = moyal_generate(space, pi, order);
    // success path re-validates
    if (!mc_residual(star).is_zero())
        throw InternalError("generated star product fails its Maurer-Cartan check");
    SkewResult skew = skew_symmetrize(*algebroid, star.coeff(1).as<LPolyDiffOp>());
    if (!pv_equal(skew.bivector, pi))
        throw InternalError("generated star product does not reproduce the bivector");

    std::ostringstream body;
    body << "model " << model_path << "\n";
    body << "space diffop\n";
    body << "degree 1\n";
    body << "order " << order << "\n";
    body << "value " << star.to_string() << "\n";
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        out << body.str();
    }
    if (format == "json") {
        Json j;
        j["command"] = "moyal";
        j["model"] = model_path;
        j["bivector"] = bivector;
        j["order"] = order;
        j["element"] = star.to_string();
        j["mc_checked"] = true;
        j["passed"] = true;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << body.str();
        std::cout << "mc check: residual 0 through h^" << order << "\n";
    }
    return 0;
}

int run_verify(int trials, std::uint64_t seed, int order, const std::string& fault,
               const std::string& format, bool serial) {
    VerifyOptions opt;
    opt.trials = trials;
    opt.seed = seed;
    opt.order = order;
    opt.inject_fault = fault;
    opt.parallel = !serial;
    std::vector<SuiteReport> reports = run_verify_suites(opt);
    bool all = true;
    if (format == "json") {
        Json j;
        j["command"] = "verify";
        j["trials"] = trials;
        j["seed"] = seed;
        j["order"] = order;
        Json arr = Json::array();
        for (const auto& r : reports) {
            Json row;
            row["suite"] = r.name;
            row["trials"] = r.trials;
            row["passed"] = r.passed;
            if (!r.passed) row["witness"] = r.witness;
            arr.push_back(row);
            all = all && r.passed;
        }
        j["suites"] = arr;
        j["passed"] = all;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& r : reports) {
            std::cout << r.name << ": " << (r.passed ? "pass" : "FAIL") << " (" << r.trials
                      << " trials)\n";
            if (!r.passed) std::cout << "  witness: " << r.witness << "\n";
            all = all && r.passed;
        }
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact workbench for formal deformation quantization"};
    app.require_subcommand(1);

    std::string format = "text";
    app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "json"}));

    std::string element_path;
    int order = -1;
    auto* check = app.add_subcommand("check-mc", "Maurer-Cartan residual of an element file");
    check->add_option("element", element_path, "element file")->required();
    check->add_option("--order", order, "override the truncation order");

    std::string wmc_path, oracle = "linear", out_prefix;
    auto* normalize = app.add_subcommand("normalize", "normalize a weak MC triple to (Pi',1,1)");
    normalize->add_option("weakmc", wmc_path, "weak MC file")->required();
    normalize->add_option("--oracle", oracle, "splitting oracle")
        ->check(CLI::IsMember({"trivial", "cone", "linear"}));
    normalize->add_option("--order", order, "override the truncation order");
    normalize->add_option("--out", out_prefix, "output file prefix");

    std::string promote_path, promote_oracle = "linear", promote_out;
    auto* promote = app.add_subcommand("promote", "promote a weak quantization to a = 1");
    promote->add_option("weakmc", promote_path, "weak MC file")->required();
    promote->add_option("--oracle", promote_oracle, "splitting oracle")
        ->check(CLI::IsMember({"trivial", "cone", "linear"}));
    promote->add_option("--order", order, "override the truncation order");
    promote->add_option("--out", promote_out, "output file prefix");

    std::string model_path, bivector, moyal_out;
    int moyal_order = 3;
    auto* moyal = app.add_subcommand("moyal", "generate a constant-coefficient star product");
    moyal->add_option("--model", model_path, "model file")->required();
    moyal->add_option("--bivector", bivector, "constant bivector, e.g. e[1,2]")->required();
    moyal->add_option("--order", moyal_order, "truncation order");
    moyal->add_option("--out", moyal_out, "write an element file");

    int trials = 100;
    std::uint64_t seed = 1;
    int vorder = 2;
    std::string fault;
    bool serial = false;
    auto* verify = app.add_subcommand("verify", "randomized verification suites");
    verify->add_option("--trials", trials, "trials per suite");
    verify->add_option("--seed", seed, "random seed");
    verify->add_option("--order", vorder, "truncation order");
    verify->add_option("--inject-fault", fault, "negative control")
        ->check(CLI::IsMember({"cartan-sign", "interchange-sign"}));
    verify->add_flag("--serial", serial, "disable the worker-thread fan-out");

    CLI11_PARSE(app, argc, argv);

    try {
        if (check->parsed()) return run_check_mc(element_path, order, format);
        if (normalize->parsed()) return run_normalize(wmc_path, oracle, order, out_prefix, format);
        if (promote->parsed())
            return run_promote(promote_path, promote_oracle, order, promote_out, format);
        if (moyal->parsed())
            return run_moyal(model_path, bivector, moyal_order, moyal_out, format);
        if (verify->parsed()) return run_verify(trials, seed, vorder, fault, format, serial);
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const OracleError& e) {
        std::cerr << e.what() << "\n";
        return 4;
    } catch (const DegreeError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const ShapeError& e) {
        std::cerr << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
