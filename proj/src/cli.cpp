#include <cwac/cli.hpp>

#include <cwac/acceptance.hpp>
#include <cwac/bounds.hpp>
#include <cwac/channel.hpp>
#include <cwac/codec.hpp>
#include <cwac/error.hpp>
#include <cwac/oracle.hpp>
#include <cwac/word.hpp>

#include <CLI11.hpp>
#include <json.hpp>

#include <cctype>
#include <cstddef>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace cwac {
namespace {

using nlohmann::json;

// "3..7" -> {3, 7}; a bare "4" means the one-element range {4, 4}
std::pair<int, int> parse_range(const std::string& text, const std::string& flag) {
    auto bad = [&] { throw ParamError(flag + " expects an integer or lo..hi range, got '" + text + "'"); };
    std::string lo_s = text, hi_s = text;
    if (auto pos = text.find(".."); pos != std::string::npos) {
        lo_s = text.substr(0, pos);
        hi_s = text.substr(pos + 2);
    }
    if (lo_s.empty() || hi_s.empty()) bad();
    for (const std::string& part : {lo_s, hi_s})
        for (char c : part)
            if (!std::isdigit(static_cast<unsigned char>(c))) bad();
    long lo = 0, hi = 0;
    try {
        lo = std::stol(lo_s);
        hi = std::stol(hi_s);
    } catch (const std::exception&) {
        bad();
    }
    if (lo < 1 || hi < lo || hi > 1000)
        throw ParamError(flag + " range must satisfy 1 <= lo <= hi <= 1000, got '" + text + "'");
    return {static_cast<int>(lo), static_cast<int>(hi)};
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParamError("cannot open input file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ParamError("cannot open output file '" + path + "'");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw ParamError("failed writing output file '" + path + "'");
}

// Message framing: the payload is a big-endian bit stream, consumed b bits per
// outer symbol and k symbols per block; the tail block is zero-padded.
int bit_at(const std::string& bytes, long i) {
    if (i < 0 || i >= static_cast<long>(bytes.size()) * 8) return 0;
    return (static_cast<unsigned char>(bytes[i >> 3]) >> (7 - (i & 7))) & 1;
}

void set_bit(std::string& bytes, long i) {
    bytes[i >> 3] = static_cast<char>(static_cast<unsigned char>(bytes[i >> 3]) | (1u << (7 - (i & 7))));
}

ConcatenatedCode load_code(const std::string& path) {
    return ConcatenatedCode::from_json_string(read_file(path));
}

int cmd_bound(std::ostream& out, int m, int n, int w, int d, int depth, bool as_json) {
    EngineOptions opts;
    opts.budget = depth;
    Engine eng(opts);
    BoundReport rep = eng.best_bounds({m, n, w, d});
    if (as_json) {
        out << rep.to_json_string() << "\n";
        return 0;
    }
    json j = json::parse(rep.to_json_string());
    out << "A(" << m << ", " << n << ", " << w << ", " << d << ") in [" << to_string(rep.lower)
        << ", " << to_string(rep.upper) << "]\n";
    out << "  lower rule: " << j["rule"]["lower"].get<std::string>() << "\n";
    out << "  upper rule: " << j["rule"]["upper"].get<std::string>() << "\n";
    return 0;
}

int cmd_table(std::ostream& out, const std::string& m_r, const std::string& n_r,
              const std::string& w_r, const std::string& d_r, int depth, const std::string& path) {
    auto [m_lo, m_hi] = parse_range(m_r, "--m");
    auto [n_lo, n_hi] = parse_range(n_r, "--n");
    auto [w_lo, w_hi] = parse_range(w_r, "--w");
    auto [d_lo, d_hi] = parse_range(d_r, "--d");
    EngineOptions opts;
    opts.budget = depth;
    Engine eng(opts);
    std::string csv = bounds_table_csv(eng, m_lo, m_hi, n_lo, n_hi, w_lo, w_hi, d_lo, d_hi);
    write_file(path, csv);
    long rows = 0;
    for (char c : csv) rows += (c == '\n');
    out << "wrote " << path << " (" << (rows - 1) << " data rows)\n";
    return 0;
}

int cmd_oracle(std::ostream& out, int m, int n, int w, int d, bool anticode, int delta,
               long long cap) {
    if (cap < 1) throw ParamError("--cap must be at least 1");
    OracleOptions opts;
    opts.universe_cap = static_cast<std::size_t>(cap);
    opts.want_witness = true;
    json j;
    j["m"] = m;
    j["n"] = n;
    j["w"] = w;
    OracleResult r;
    if (anticode) {
        if (delta < 0) throw ParamError("--anticode requires --delta");
        if (d >= 0) throw ParamError("--anticode takes --delta, not --d");
        j["delta"] = delta;
        r = exact_max_anticode(m, n, w, delta, opts);
    } else {
        if (d < 0) throw ParamError("oracle requires --d (or --anticode with --delta)");
        j["d"] = d;
        r = exact_max_code(m, n, w, d, opts);
    }
    j["exact"] = std::to_string(r.size);
    json witness = json::array();
    for (const ArrayWord& a : r.witness) witness.push_back(a.to_hex());
    j["witness"] = witness;
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_construct(std::ostream& out, int m, int w, int f, int n, int k, const std::string& path) {
    CodePlan plan = plan_params(m, w, f, n, k);
    if (!plan.feasible) throw ParamError(plan.message);
    InnerCode inner = build_inner_lexicode(m, w, f);
    ConcatenatedCode code(std::move(inner), n, k);
    write_file(path, code.to_json_string() + "\n");
    json j;
    j["m"] = m;
    j["w"] = w;
    j["f"] = f;
    j["n"] = n;
    j["k"] = k;
    j["b"] = plan.bits;
    j["inner_size"] = std::to_string(plan.inner_size);
    j["e"] = plan.e;
    j["guarantee_bits"] = plan.guarantee;
    j["lifting"] = plan.lifting;
    j["rate"] = std::to_string(plan.rate_num) + "/" + std::to_string(plan.rate_den);
    j["written"] = path;
    out << j.dump(2) << "\n";
    return 0;
}

int cmd_encode(std::ostream& out, const std::string& code_path, const std::string& in_path,
               const std::string& out_path) {
    ConcatenatedCode code = load_code(code_path);
    std::string payload = read_file(in_path);
    const int b = code.inner().bits();
    const int k = code.k();
    const long bits_per_block = static_cast<long>(k) * b;
    const long total_bytes = static_cast<long>(payload.size());
    const long blocks = (8 * total_bytes + bits_per_block - 1) / bits_per_block;
    json j;
    j["format"] = "cwac-encoded";
    j["m"] = code.inner().m();
    j["w"] = code.inner().w();
    j["f"] = code.inner().f();
    j["b"] = b;
    j["n"] = code.n();
    j["k"] = k;
    j["total_bytes"] = total_bytes;
    json block_list = json::array();
    for (long blk = 0; blk < blocks; ++blk) {
        std::vector<int> msg(static_cast<std::size_t>(k));
        for (int s = 0; s < k; ++s) {
            int v = 0;
            for (int t = 0; t < b; ++t)
                v = (v << 1) | bit_at(payload, blk * bits_per_block + static_cast<long>(s) * b + t);
            msg[static_cast<std::size_t>(s)] = v;
        }
        ArrayWord enc = code.encode(msg);
        json cols = json::array();
        for (const ColumnWord& c : enc.columns()) cols.push_back(c.to_hex());
        block_list.push_back(cols);
    }
    j["blocks"] = block_list;
    write_file(out_path, j.dump(2) + "\n");
    out << "encoded " << total_bytes << " bytes into " << blocks << " blocks (" << out_path
        << ")\n";
    return 0;
}

int cmd_decode(std::ostream& out, std::ostream& err, const std::string& code_path,
               const std::string& in_path, const std::string& out_path) {
    ConcatenatedCode code = load_code(code_path);
    json j;
    try {
        j = json::parse(read_file(in_path));
    } catch (const json::exception& e) {
        throw ParamError(std::string("malformed encoded file: ") + e.what());
    }
    auto expect_int = [&](const char* key, long want) {
        if (!j.contains(key) || !j[key].is_number_integer() || j[key].get<long>() != want)
            throw ParamError(std::string("encoded file field '") + key +
                             "' does not match the code description");
    };
    if (!j.contains("format") || j["format"] != "cwac-encoded")
        throw ParamError("encoded file is missing the cwac-encoded format tag");
    expect_int("m", code.inner().m());
    expect_int("w", code.inner().w());
    expect_int("f", code.inner().f());
    expect_int("b", code.inner().bits());
    expect_int("n", code.n());
    expect_int("k", code.k());
    if (!j.contains("total_bytes") || !j["total_bytes"].is_number_integer() ||
        j["total_bytes"].get<long>() < 0)
        throw ParamError("encoded file needs a nonnegative integer total_bytes");
    const long total_bytes = j["total_bytes"].get<long>();
    const int b = code.inner().bits();
    const int k = code.k();
    const long bits_per_block = static_cast<long>(k) * b;
    const long blocks = (8 * total_bytes + bits_per_block - 1) / bits_per_block;
    if (!j.contains("blocks") || !j["blocks"].is_array() ||
        static_cast<long>(j["blocks"].size()) != blocks)
        throw ParamError("encoded file must carry exactly " + std::to_string(blocks) + " blocks");
    const int m = code.inner().m();
    std::string payload(static_cast<std::size_t>((blocks * bits_per_block + 7) / 8), '\0');
    long beyond = 0;
    for (long blk = 0; blk < blocks; ++blk) {
        const json& cols = j["blocks"][static_cast<std::size_t>(blk)];
        if (!cols.is_array() || static_cast<int>(cols.size()) != code.n())
            throw ParamError("block " + std::to_string(blk) + " must list " +
                             std::to_string(code.n()) + " column words");
        std::vector<BitWord> received;
        received.reserve(cols.size());
        for (const json& c : cols) {
            if (!c.is_string())
                throw ParamError("block " + std::to_string(blk) + " has a non-string column");
            received.push_back(BitWord::from_hex(m, c.get<std::string>()));
        }
        DecodeOutcome res = code.decode(received);
        if (!res.decoded) {
            err << "decode failure in block " << blk << " of " << blocks << "\n";
            return 3;
        }
        beyond += res.beyond_guarantee ? 1 : 0;
        for (int s = 0; s < k; ++s)
            for (int t = 0; t < b; ++t)
                if ((res.message[static_cast<std::size_t>(s)] >> (b - 1 - t)) & 1)
                    set_bit(payload, blk * bits_per_block + static_cast<long>(s) * b + t);
    }
    payload.resize(static_cast<std::size_t>(total_bytes));
    write_file(out_path, payload);
    if (beyond > 0)
        err << "warning: " << beyond << " of " << blocks
            << " blocks decoded past the certified radius\n";
    out << "decoded " << blocks << " blocks into " << total_bytes << " bytes (" << out_path
        << ")\n";
    return 0;
}

int cmd_simulate(std::ostream& out, const std::string& code_path, int losses, int injections,
                 long trials, unsigned long long seed, const std::string& policy, int threads) {
    ConcatenatedCode code = load_code(code_path);
    ChannelSpec spec;
    spec.losses = losses;
    spec.injections = injections;
    spec.seed = static_cast<std::uint64_t>(seed);
    spec.policy = policy == "capped" ? Placement::PerColumnCapped : Placement::Uniform;
    SimStats stats = simulate(code, spec, trials, threads);
    out << results_json(code, spec, stats) << "\n";
    return 0;
}

int cmd_selftest(std::ostream& out) {
    std::vector<CriterionResult> results = run_acceptance();
    int failed = 0;
    for (const CriterionResult& r : results) {
        out << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name;
        char buf[32];
        std::snprintf(buf, sizeof(buf), " (%.2fs)", r.seconds);
        out << buf << "\n      " << r.detail << "\n";
        failed += r.pass ? 0 : 1;
    }
    out << (failed == 0 ? "all criteria passed" : std::to_string(failed) + " criteria FAILED")
        << "\n";
    return failed == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"constant-weight array code toolkit"};
    app.name("cwac");
    app.require_subcommand(1);

    int m = 0, n = 0, w = 0, d = -1, delta = -1, f = 0, k = 0;
    int depth = 4, threads = 1, losses = 0, injections = 0;
    long long cap = 5000;
    long trials = 0;
    unsigned long long seed = 0;
    bool as_json = false, anticode = false;
    std::string m_range, n_range, w_range, d_range;
    std::string out_path, in_path, code_path, policy = "uniform";

    CLI::App* c_bound = app.add_subcommand("bound", "certified interval for a code size");
    c_bound->add_option("--m", m, "alphabet size")->required();
    c_bound->add_option("--n", n, "columns per array")->required();
    c_bound->add_option("--w", w, "column weight")->required();
    c_bound->add_option("--d", d, "minimum distance")->required();
    c_bound->add_option("--depth", depth, "rule recursion depth")->check(CLI::Range(0, 16));
    c_bound->add_flag("--json", as_json, "print the full report as JSON");

    CLI::App* c_table = app.add_subcommand("table", "CSV of intervals over parameter ranges");
    c_table->add_option("--m", m_range, "alphabet sizes, lo..hi")->required();
    c_table->add_option("--n", n_range, "column counts, lo..hi")->required();
    c_table->add_option("--w", w_range, "column weights, lo..hi")->required();
    c_table->add_option("--d", d_range, "distances, lo..hi")->required();
    c_table->add_option("--depth", depth, "rule recursion depth")->check(CLI::Range(0, 16));
    c_table->add_option("--out", out_path, "CSV output path")->required();

    CLI::App* c_oracle = app.add_subcommand("oracle", "exhaustive maximum with witness");
    c_oracle->add_option("--m", m, "alphabet size")->required();
    c_oracle->add_option("--n", n, "columns per array")->required();
    c_oracle->add_option("--w", w, "column weight")->required();
    c_oracle->add_option("--d", d, "minimum distance (code search)");
    c_oracle->add_flag("--anticode", anticode, "search anticodes of bounded diameter instead");
    c_oracle->add_option("--delta", delta, "diameter bound for --anticode");
    c_oracle->add_option("--cap", cap, "refuse universes larger than this");
    c_oracle->add_option("--threads", threads, "worker count (search is deterministic)");

    CLI::App* c_construct = app.add_subcommand("construct", "build a code and save it as JSON");
    c_construct->add_option("--m", m, "alphabet size")->required();
    c_construct->add_option("--w", w, "column weight")->required();
    c_construct->add_option("--f", f, "inner half distance")->required();
    c_construct->add_option("--n", n, "outer block length")->required();
    c_construct->add_option("--k", k, "outer message length")->required();
    c_construct->add_option("--out", out_path, "code description output path")->required();

    CLI::App* c_encode = app.add_subcommand("encode", "encode a file into array blocks");
    c_encode->add_option("--code", code_path, "code description JSON")->required();
    c_encode->add_option("--in", in_path, "payload input path")->required();
    c_encode->add_option("--out", out_path, "encoded output path")->required();

    CLI::App* c_decode = app.add_subcommand("decode", "decode array blocks back into a file");
    c_decode->add_option("--code", code_path, "code description JSON")->required();
    c_decode->add_option("--in", in_path, "encoded input path")->required();
    c_decode->add_option("--out", out_path, "payload output path")->required();

    CLI::App* c_sim = app.add_subcommand("simulate", "run the loss/injection channel");
    c_sim->add_option("--code", code_path, "code description JSON")->required();
    c_sim->add_option("--losses", losses, "erased ones per trial")->required();
    c_sim->add_option("--injections", injections, "flipped zeros per trial")->required();
    c_sim->add_option("--trials", trials, "number of trials")->required();
    c_sim->add_option("--seed", seed, "base seed (required for reproducibility)")->required();
    c_sim->add_option("--policy", policy, "error placement")
        ->check(CLI::IsMember({"uniform", "capped"}));
    c_sim->add_option("--threads", threads, "worker count (results independent of it)");

    CLI::App* c_selftest = app.add_subcommand("selftest", "run the acceptance criteria");

    try {
        std::vector<const char*> argv;
        argv.reserve(args.size() + 1);
        argv.push_back("cwac");
        for (const std::string& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n\n";
        CLI::App* sub = app.get_subcommands().empty() ? &app : app.get_subcommands().front();
        err << sub->help();
        return 2;
    }

    try {
        if (app.got_subcommand(c_bound)) return cmd_bound(out, m, n, w, d, depth, as_json);
        if (app.got_subcommand(c_table))
            return cmd_table(out, m_range, n_range, w_range, d_range, depth, out_path);
        if (app.got_subcommand(c_oracle)) return cmd_oracle(out, m, n, w, d, anticode, delta, cap);
        if (app.got_subcommand(c_construct)) return cmd_construct(out, m, w, f, n, k, out_path);
        if (app.got_subcommand(c_encode)) return cmd_encode(out, code_path, in_path, out_path);
        if (app.got_subcommand(c_decode)) return cmd_decode(out, err, code_path, in_path, out_path);
        if (app.got_subcommand(c_sim))
            return cmd_simulate(out, code_path, losses, injections, trials, seed, policy, threads);
        if (app.got_subcommand(c_selftest)) return cmd_selftest(out);
    } catch (const CapExceeded& e) {
        err << "search refused: " << e.what() << " (would need cap >= " << e.required_cap << ")\n";
        return 4;
    } catch (const ParamError& e) {
        err << "parameter error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    err << "error: no command dispatched\n";
    return 1;
}

}  // namespace cwac
