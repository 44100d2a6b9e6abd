// psl2rp: construct PSL(2,p), enumerate its maximal subgroups, decide the
// replacement property via the radical criterion, and emit machine-checkable
// failure certificates.
//
// Exit codes: 0 = all checks agree with the closed-form predictions,
// 1 = disagreement or failed replay, 2 = usage error, 3 = unresolved budget.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "psl2rp/genseq.hpp"
#include "psl2rp/parallel.hpp"
#include "psl2rp/report.hpp"

using namespace psl2rp;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitDisagree = 1;
constexpr int kExitUsage = 2;
constexpr int kExitUnresolved = 3;

struct CommonArgs {
    std::string format = "text";
    unsigned threads = 0;
    uint64_t budget = 0;
    std::string cache_dir;
    uint64_t seed = 0x5eed;
    bool override_ceiling = false;
    std::string out_file;
};

AnalysisOptions make_options(const CommonArgs& args) {
    AnalysisOptions opts;
    opts.threads = args.threads;
    if (const char* env = std::getenv("PSL2RP_THREADS"); env && args.threads == 0)
        opts.threads = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    if (args.budget) opts.budget = args.budget;
    opts.seed = args.seed;
    if (!args.cache_dir.empty())
        opts.cache_dir = args.cache_dir;
    else if (const char* env = std::getenv("PSL2RP_CACHE_DIR"); env && *env)
        opts.cache_dir = std::string(env);
    opts.override_ceiling = args.override_ceiling;
    return opts;
}

void emit(const CommonArgs& args, const std::string& text) {
    if (args.out_file.empty()) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << "\n";
    } else {
        std::ofstream os(args.out_file);
        os << text;
    }
}

void emit_json_or_text(const CommonArgs& args, const json& j,
                       const std::function<std::string(const json&)>& render) {
    if (args.format == "json")
        emit(args, j.dump(2));
    else
        emit(args, render(j));
}

std::optional<std::pair<uint32_t, uint32_t>> parse_range(const std::string& text) {
    auto dots = text.find("..");
    try {
        if (dots == std::string::npos) {
            uint32_t p = static_cast<uint32_t>(std::stoul(text));
            return std::make_pair(p, p);
        }
        uint32_t lo = static_cast<uint32_t>(std::stoul(text.substr(0, dots)));
        uint32_t hi = static_cast<uint32_t>(std::stoul(text.substr(dots + 2)));
        if (lo > hi) return std::nullopt;
        return std::make_pair(lo, hi);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::vector<uint32_t> primes_in(uint32_t lo, uint32_t hi) {
    std::vector<uint32_t> out;
    for (uint32_t p = std::max(lo, 7u); p <= hi; ++p)
        if (is_prime(p)) out.push_back(p);
    return out;
}

int check_ceiling(uint32_t p, uint32_t ceiling, const AnalysisOptions& opts, const char* what) {
    if (p > ceiling && !opts.override_ceiling) {
        std::cerr << what << " at p = " << p << " exceeds the feasibility ceiling " << ceiling
                  << " (|G| grows as p^3); pass --force-large to acknowledge\n";
        return kExitUsage;
    }
    return kExitOk;
}

RPReport verify_prime(uint32_t p, const AnalysisOptions& opts) {
    AnalysisContext ctx = AnalysisContext::create(p, opts);
    return check_rp(ctx, jambor_m(p), /*m_verified=*/false);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"replacement property engine for PSL(2,p)"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--format", args.format, "output format")
            ->check(CLI::IsMember({"text", "json", "dot"}));
        cmd->add_option("--threads", args.threads, "worker threads (0 = auto)");
        cmd->add_option("--budget", args.budget, "tuple-enumeration budget");
        cmd->add_option("--cache", args.cache_dir, "group table cache directory");
        cmd->add_option("--seed", args.seed, "seed for sampled checks");
        cmd->add_flag("--force-large", args.override_ceiling,
                      "acknowledge runs above the feasibility ceiling");
        cmd->add_option("--out", args.out_file, "write the report to a file");
    };

    std::string range_text, mode = "predict", variant = "case1", cert_file;
    uint32_t prime_arg = 0;

    CLI::App* cmd_table = app.add_subcommand("table", "Theorem-1 verdict table over a prime range");
    cmd_table->add_option("range", range_text, "prime range, e.g. 7..43")->required();
    cmd_table->add_option("--mode", mode, "predict | verify | oracle")
        ->check(CLI::IsMember({"predict", "verify", "oracle"}));
    add_common(cmd_table);

    CLI::App* cmd_maximals = app.add_subcommand("maximals", "maximal subgroup census");
    cmd_maximals->add_option("p", prime_arg, "prime > 5")->required();
    add_common(cmd_maximals);

    CLI::App* cmd_witnesses = app.add_subcommand("witnesses", "witnesses to RP failure");
    cmd_witnesses->add_option("p", prime_arg, "prime > 5")->required();
    add_common(cmd_witnesses);

    CLI::App* cmd_verify = app.add_subcommand("verify", "full RP verification report");
    cmd_verify->add_option("p", prime_arg, "prime > 5")->required();
    cmd_verify->add_option("--mode", mode, "verify | oracle")
        ->check(CLI::IsMember({"verify", "oracle"}));
    add_common(cmd_verify);

    CLI::App* cmd_certify = app.add_subcommand("certify", "emit a failure certificate");
    cmd_certify->add_option("p", prime_arg, "failing prime")->required();
    cmd_certify->add_option("--variant", variant, "case1 | case2 | order3")
        ->check(CLI::IsMember({"case1", "case2", "order3"}));
    add_common(cmd_certify);

    CLI::App* cmd_replay = app.add_subcommand("replay", "re-verify a certificate file");
    cmd_replay->add_option("file", cert_file, "certificate JSON file")->required();
    add_common(cmd_replay);

    CLI::App* cmd_diagram = app.add_subcommand("diagram", "DOT diagram of a failure configuration");
    cmd_diagram->add_option("p", prime_arg, "failing prime")->required();
    cmd_diagram->add_option("--variant", variant, "case1 | case2 | order3")
        ->check(CLI::IsMember({"case1", "case2", "order3"}));
    add_common(cmd_diagram);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    AnalysisOptions opts = make_options(args);

    try {
        if (cmd_table->parsed()) {
            mode = cmd_table->count("--mode") ? mode : "predict";
            auto range = parse_range(range_text);
            if (!range) {
                std::cerr << "invalid range '" << range_text << "'\n";
                return kExitUsage;
            }
            std::vector<uint32_t> primes = primes_in(range->first, range->second);
            if (primes.empty()) {
                std::cerr << "no primes > 5 in range '" << range_text << "'\n";
                return kExitUsage;
            }
            uint32_t ceiling = (mode == "oracle") ? opts.oracle_ceiling : opts.verify_ceiling;
            if (mode != "predict")
                for (uint32_t p : primes)
                    if (int rc = check_ceiling(p, ceiling, opts, "verification"); rc) return rc;

            bool any_disagree = false, any_unresolved = false;
            std::vector<TableRow> rows(primes.size());
            // Primes are processed concurrently; rows land in per-prime
            // slots so the emitted table is always in ascending-p order.
            parallel_for(primes.size(), opts.threads, [&](uint64_t i) {
                uint32_t p = primes[i];
                TableRow row;
                row.p = p;
                row.predicted = predict_rp(p);
                if (mode != "predict") {
                    RPReport rep;
                    if (mode == "oracle") {
                        BuildOptions bopts;
                        GroupTable g = TableCache::build_cached(p, bopts, opts.cache_dir);
                        rep = oracle_check_rp(g, jambor_m(p));
                    } else {
                        rep = verify_prime(p, opts);
                    }
                    row.verified = rep.verdict;
                    row.agreement = rep.agreement;
                }
                rows[i] = row;
            });
            for (const TableRow& row : rows) {
                if (row.verified) {
                    any_disagree = any_disagree || (*row.verified != Verdict::Unresolved &&
                                                    !row.agreement);
                    any_unresolved = any_unresolved || *row.verified == Verdict::Unresolved;
                }
            }
            emit_json_or_text(args, table_to_json(rows), table_to_text);
            if (any_disagree) return kExitDisagree;
            if (any_unresolved) return kExitUnresolved;
            return kExitOk;
        }

        if (cmd_maximals->parsed()) {
            AnalysisContext ctx = AnalysisContext::create(prime_arg, opts);
            emit_json_or_text(args, census_to_json(ctx), census_to_text);
            return kExitOk;
        }

        if (cmd_witnesses->parsed() || cmd_verify->parsed()) {
            bool oracle_mode = cmd_verify->parsed() && mode == "oracle";
            uint32_t ceiling = oracle_mode ? opts.oracle_ceiling : opts.verify_ceiling;
            if (int rc = check_ceiling(prime_arg, ceiling, opts, "verification"); rc) return rc;
            RPReport rep;
            GroupTable* gptr = nullptr;
            std::optional<AnalysisContext> ctx;
            std::optional<GroupTable> oracle_group;
            if (oracle_mode) {
                BuildOptions bopts;
                oracle_group = TableCache::build_cached(prime_arg, bopts, opts.cache_dir);
                rep = oracle_check_rp(*oracle_group, jambor_m(prime_arg));
                gptr = &*oracle_group;
            } else {
                ctx.emplace(AnalysisContext::create(prime_arg, opts));
                rep = check_rp(*ctx, jambor_m(prime_arg), false);
                gptr = &ctx->group;
            }
            if (cmd_witnesses->parsed())
                emit_json_or_text(args, witnesses_to_json(rep, *gptr), witnesses_to_text);
            else
                emit_json_or_text(args, report_to_json(rep, *gptr), report_to_text);
            if (rep.verdict == Verdict::Unresolved) return kExitUnresolved;
            return rep.agreement ? kExitOk : kExitDisagree;
        }

        if (cmd_certify->parsed()) {
            AnalysisContext ctx = AnalysisContext::create(prime_arg, opts);
            FailureCertificate cert = construct_failure_certificate(ctx, variant);
            emit(args, certificate_to_json(cert).dump(2));
            return kExitOk;
        }

        if (cmd_replay->parsed()) {
            std::ifstream is(cert_file);
            if (!is) {
                std::cerr << "cannot open '" << cert_file << "'\n";
                return kExitUsage;
            }
            json j;
            try {
                is >> j;
            } catch (const std::exception& e) {
                std::cerr << "replay: invalid JSON: " << e.what() << "\n";
                return kExitDisagree;
            }
            ReplayResult res = replay_certificate(j, opts);
            if (res.ok) {
                emit(args, "replay ok\n");
                return kExitOk;
            }
            std::cerr << "replay failed at check: " << res.failed_check << "\n";
            return kExitDisagree;
        }

        if (cmd_diagram->parsed()) {
            AnalysisContext ctx = AnalysisContext::create(prime_arg, opts);
            FailureCertificate cert = construct_failure_certificate(ctx, variant);
            emit(args, diagram_dot(cert.diagram,
                                   "p = " + std::to_string(prime_arg) + ", " + variant));
            return kExitOk;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDisagree;
    }
    return kExitUsage;
}
