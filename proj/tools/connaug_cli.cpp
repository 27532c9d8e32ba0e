#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "connaug/connaug.hpp"

namespace {

using namespace connaug;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& text, const std::string& outPath) {
    if (outPath.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
    } else {
        std::ofstream out(outPath, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + outPath);
        out << text;
    }
}

struct GenFlags {
    GenParams p;
    std::string costModel = "edge";
    std::string out;

    void attach(CLI::App* cmd) {
        cmd->add_option("--n", p.n, "node count");
        cmd->add_option("--t", p.tcount, "terminal count");
        cmd->add_option("--k", p.k, "connectivity already present");
        cmd->add_flag("--directed", p.directed, "directed instance");
        cmd->add_option("--cost-model", costModel, "edge|node")
            ->check(CLI::IsMember({"edge", "node"}));
        cmd->add_option("--density", p.density, "candidate edge probability");
        cmd->add_option("--cost-lo", p.costLo, "minimum cost");
        cmd->add_option("--cost-hi", p.costHi, "maximum cost");
        cmd->add_flag("--unit-costs", p.unitCosts, "complete candidate set at cost 1");
        cmd->add_option("--seed", p.seed, "rng seed");
    }

    GenParams params() const {
        GenParams q = p;
        q.costModel = costModel == "node" ? CostModel::node : CostModel::edge;
        return q;
    }
};

int worker_count() {
    if (const char* env = std::getenv("CONNAUG_THREADS")) {
        int v = std::atoi(env);
        if (v >= 1) return v;
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? (int)hw : 1;
}

std::string bench_row(uint64_t seed, const GenParams& params, const std::string& variant,
                      int oracleCap) {
    std::ostringstream row;
    row << "seed " << seed;
    GenParams p = params;
    p.seed = seed;
    Instance raw = gen_random(p);
    Instance inst = prepare_instance(raw);
    Solution sol;
    try {
        sol = variant == "ii" ? solve_variant_ii(inst) : solve_variant_i(inst);
    } catch (const InfeasibleError&) {
        row << " infeasible";
        return row.str();
    }
    row << " cost " << sol.cost;
    if ((int)inst.cedges.size() <= oracleCap) {
        auto opt = opt_augment(inst, oracleCap);
        row << " opt " << opt.cost;
        if (opt.cost > 0) {
            Rat ratio(sol.cost, opt.cost);
            row << " ratio " << ratio.str();
        } else {
            row << " ratio -";
        }
    } else {
        row << " opt - ratio -";
    }
    row << " bound " << sol.cert.bound_num << "/" << sol.cert.bound_den;
    return row.str();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"subset connectivity augmentation toolkit"};
    app.require_subcommand(1);

    GenFlags gen;
    auto* cmdGen = app.add_subcommand("gen", "generate a random instance");
    gen.attach(cmdGen);
    cmdGen->add_option("--out", gen.out, "output file (default stdout)");

    std::string variant = "i", stars = "greedy", rooted = "trivial", solveOut, instPath;
    auto* cmdSolve = app.add_subcommand("solve", "solve an instance");
    cmdSolve->add_option("--variant", variant, "i|ii")->check(CLI::IsMember({"i", "ii"}));
    cmdSolve->add_option("--stars", stars, "greedy|outcover")
        ->check(CLI::IsMember({"greedy", "outcover"}));
    cmdSolve->add_option("--rooted", rooted, "rooted solver")->check(CLI::IsMember({"trivial"}));
    cmdSolve->add_option("--out", solveOut, "output file (default stdout)");
    cmdSolve->add_option("instance", instPath, "instance file")->required();

    std::string vInst, vSol;
    auto* cmdVerify = app.add_subcommand("verify", "verify a solution file");
    cmdVerify->add_option("instance", vInst, "instance file")->required();
    cmdVerify->add_option("solution", vSol, "solution file")->required();

    std::string oInst, oracleOut;
    int oracleCap = 18;
    auto* cmdOracle = app.add_subcommand("oracle", "exact optimum on a small instance");
    cmdOracle->add_option("--cap", oracleCap, "candidate count guard");
    cmdOracle->add_option("--out", oracleOut, "output file (default stdout)");
    cmdOracle->add_option("instance", oInst, "instance file")->required();

    std::string cInst;
    auto* cmdCores = app.add_subcommand("cores", "print residual cores");
    cmdCores->add_option("instance", cInst, "instance file")->required();

    GenFlags bench;
    std::string seedRange = "1..10", benchVariant = "i";
    int benchCap = 18;
    auto* cmdBench = app.add_subcommand("bench", "generate, solve and rate a seed range");
    bench.attach(cmdBench);
    cmdBench->add_option("--seeds", seedRange, "seed range A..B");
    cmdBench->add_option("--variant", benchVariant, "i|ii")->check(CLI::IsMember({"i", "ii"}));
    cmdBench->add_option("--oracle-cap", benchCap, "run the oracle when |E| fits");

    try {
        app.parse(argc, argv);

        if (cmdGen->parsed()) {
            Instance inst = gen_random(gen.params());
            write_output(serialize_instance(inst), gen.out);
            return 0;
        }
        if (cmdSolve->parsed()) {
            Instance inst = prepare_instance(parse_instance(read_file(instPath)));
            Solution sol = variant == "ii" ? solve_variant_ii(inst, stars == "outcover")
                                           : solve_variant_i(inst);
            write_output(serialize_solution(sol), solveOut);
            return 0;
        }
        if (cmdVerify->parsed()) {
            Instance inst = prepare_instance(parse_instance(read_file(vInst)));
            Solution sol = parse_solution(read_file(vSol));
            auto ids = resolve_edge_ids(inst, sol.edges);
            auto rep = verify_solution(inst, ids);
            std::cout << "feasible " << (rep.feasible ? "yes" : "no") << " cost " << rep.cost
                      << " residual_cores " << rep.residualCores;
            if (rep.witness)
                std::cout << " witness (" << rep.witness->u << "," << rep.witness->v
                          << ") deficiency " << rep.witness->deficiency;
            std::cout << '\n';
            if (rep.cost != sol.cost) {
                std::cout << "declared cost " << sol.cost << " mismatches\n";
                return 2;
            }
            return rep.feasible ? 0 : 2;
        }
        if (cmdOracle->parsed()) {
            Instance inst = prepare_instance(parse_instance(read_file(oInst)));
            auto opt = opt_augment(inst, oracleCap);
            Certificate cert;
            cert.oracle = true;
            write_output(serialize_solution(make_solution(inst, opt.edges, cert)), oracleOut);
            return 0;
        }
        if (cmdCores->parsed()) {
            Instance inst = prepare_instance(parse_instance(read_file(cInst)));
            Working w(inst);
            auto print_side = [&](Side side, const char* tag) {
                ResidualContext ctx(w, side);
                for (auto& c : cores(ctx)) {
                    std::cout << "core inner={";
                    bool first = true;
                    for (int i = 0; i < inst.tcount(); ++i)
                        if (c.inner >> i & 1) {
                            if (!first) std::cout << ',';
                            std::cout << inst.terminals[i];
                            first = false;
                        }
                    std::cout << "} boundary=" << inst.k << " side=" << tag << '\n';
                }
            };
            print_side(Side::forward, "fwd");
            if (inst.directed) print_side(Side::reverse, "rev");
            return 0;
        }
        if (cmdBench->parsed()) {
            auto dots = seedRange.find("..");
            if (dots == std::string::npos) throw CLI::ValidationError("--seeds", "expected A..B");
            uint64_t lo = std::stoull(seedRange.substr(0, dots));
            uint64_t hi = std::stoull(seedRange.substr(dots + 2));
            if (hi < lo) throw CLI::ValidationError("--seeds", "empty range");
            size_t count = (size_t)(hi - lo + 1);
            std::vector<std::string> rows(count);
            std::atomic<size_t> next{0};
            GenParams params = bench.params();
            int workers = std::min<int>(worker_count(), (int)count);
            std::vector<std::thread> pool;
            for (int t = 0; t < workers; ++t)
                pool.emplace_back([&] {
                    for (;;) {
                        size_t i = next.fetch_add(1);
                        if (i >= count) return;
                        rows[i] = bench_row(lo + i, params, benchVariant, benchCap);
                    }
                });
            for (auto& th : pool) th.join();
            for (auto& r : rows) std::cout << r << '\n';
            return 0;
        }
        return 1;
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const InfeasibleError& e) {
        std::cerr << "infeasible: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
