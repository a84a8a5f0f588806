#include "commands.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <thread>

namespace charsum::cli {

namespace {

constexpr double kRecheckTolerance = 1e-9;

class Sink {
public:
    Sink(const std::string& path, std::ostream& fallback) : out_(&fallback) {
        if (!path.empty()) {
            file_.open(path, std::ios::binary | std::ios::trunc);
            if (!file_) throw Error(ErrorKind::InvalidArgument, "cannot open output file '" + path + "'");
            out_ = &file_;
        }
    }
    std::ostream& operator*() { return *out_; }
    void line(const std::string& s) { *out_ << s << '\n'; }

private:
    std::ofstream file_;
    std::ostream* out_;
};

template <typename R, typename F>
std::vector<R> parallel_map(std::size_t n, unsigned workers, F f) {
    std::vector<R> out(n);
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::exception_ptr failure;
    auto work = [&] {
        try {
            for (std::size_t i; (i = next.fetch_add(1)) < n;) out[i] = f(i);
        } catch (...) {
            std::lock_guard lock(mu);
            if (!failure) failure = std::current_exception();
            next = n;
        }
    };
    if (workers <= 1 || n <= 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < std::min<std::size_t>(workers, n); ++w) pool.emplace_back(work);
    }
    if (failure) std::rethrow_exception(failure);
    return out;
}

std::optional<std::uint64_t> parse_uint(std::string_view s) {
    std::uint64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

Character select_character(const FieldCtx& ctx, const std::string& sel) {
    if (sel == "quadratic") return quadratic_character(ctx);
    const auto j = parse_uint(sel);
    if (!j) throw Error(ErrorKind::InvalidArgument, "--chi must be an index or 'quadratic'");
    if (*j >= ctx.group_order()) throw Error(ErrorKind::IndexOutOfRange, "character index must be below p-1");
    return Character(ctx, static_cast<std::uint32_t>(*j));
}

Subgroup select_subgroup(const FieldCtx& ctx, const std::string& sel) {
    if (sel == "near-sqrt") return subgroup_near_sqrt(ctx);
    const auto n = parse_uint(sel);
    if (!n || *n == 0 || *n > ctx.group_order())
        throw Error(ErrorKind::InvalidArgument, "--subgroup-order must divide p-1");
    return subgroup_of_order(ctx, static_cast<std::uint32_t>(*n));
}

std::vector<std::uint32_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
    std::vector<std::uint32_t> out;
    if (hi > kMaxFieldPrime) throw Error(ErrorKind::CapacityExceeded, "primes are limited to 10^7");
    for (std::uint64_t n = std::max<std::uint64_t>(lo, 3); n <= hi; ++n)
        if (is_prime(n)) out.push_back(static_cast<std::uint32_t>(n));
    return out;
}

void write_value(Json& j, const SumValue& v, double sqrt_p) {
    if (v.exact) {
        j["coeffs"] = v.exact->to_string();
        std::string reduced = "[";
        const auto r = v.exact->reduced();
        for (std::size_t i = 0; i < r.size(); ++i) reduced += (i ? "," : "") + r[i].get_str();
        j["reduced"] = reduced + "]";
        if (auto n = as_integer(*v.exact)) j["integer"] = n->get_str();
    }
    j["re"] = format_double(v.numeric.real());
    j["im"] = format_double(v.numeric.imag());
    j["abs"] = format_double(v.abs());
    j["ratio"] = format_double(v.abs() / sqrt_p);
}

void write_flat_csv(Sink& sink, const Json& j) {
    std::string header, row;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!header.empty()) {
            header += ',';
            row += ',';
        }
        header += csv_field(it.key());
        row += csv_field(it->is_string() ? it->get<std::string>() : it->dump());
    }
    sink.line(header);
    sink.line(row);
}

}  // namespace

// ---------------------------------------------------------------- sum

int cmd_sum(const RunConfig& cfg, std::ostream& out, std::ostream&) {
    const FieldCtx ctx = make_ctx(cfg.p);
    const double sqrt_p = std::sqrt(static_cast<double>(ctx.p));
    Json j;
    j["kind"] = cfg.kind;
    j["p"] = ctx.p;

    if (cfg.kind == "exp") {
        const std::uint64_t q = cfg.q == 0 ? ctx.p : cfg.q;
        if (q < 2 || q > kMaxFieldPrime) throw Error(ErrorKind::InvalidArgument, "--q must be in [2, 10^7]");
        std::vector<std::uint32_t> d = cfg.d;
        if (d.empty()) {
            const auto h = select_subgroup(ctx, cfg.subgroup);
            d.assign(h.elements.begin(), h.elements.end());
        }
        const Mode mode = resolve_mode(cfg.mode, q);
        j["q"] = q;
        j["D_size"] = d.size();
        j["a"] = cfg.a;
        j["mode"] = std::string(to_string(mode));
        write_value(j, exp_sum_subset(static_cast<std::uint32_t>(q), d, cfg.a, mode), sqrt_p);
    } else {
        std::optional<Subgroup> h;
        std::vector<Residue> d;
        if (!cfg.d.empty()) {
            if (cfg.kind != "shifted") throw Error(ErrorKind::InvalidArgument, "--d is only accepted with --kind shifted");
            for (auto x : cfg.d) {
                if (x >= ctx.p) throw Error(ErrorKind::InvalidArgument, "--d elements must lie in [0, p)");
                d.push_back(x);
            }
        } else {
            h = select_subgroup(ctx, cfg.subgroup);
            d = h->elements;
        }
        const bool additive = cfg.kind == "kloosterman" || cfg.kind == "inverse-shift";
        const Mode mode = additive ? Mode::numeric : resolve_mode(cfg.mode, ctx.group_order());
        std::optional<Character> chi;
        if (!additive) {
            chi = select_character(ctx, cfg.chi);
            if (chi->is_principal())
                throw Error(ErrorKind::PrincipalCharacter, "the sum is compared with sqrt(p) and needs chi != chi_0");
            j["chi"] = chi->index();
        }
        if (h) j["H"] = h->order;
        else j["D_size"] = d.size();
        const Residue a = static_cast<Residue>(cfg.a % ctx.p);
        SumValue value;
        if (cfg.kind == "shifted") {
            j["a"] = a;
            value = shifted_sum(ctx, *chi, d, a, mode);
        } else if (cfg.kind == "nonlinear") {
            j["a"] = a;
            value = nonlinear_sum_xxa(ctx, *chi, *h, a, mode);
        } else if (cfg.kind == "product") {
            j["a"] = a;
            j["b"] = cfg.b % ctx.p;
            value = shifted_product_sum(ctx, *chi, *h, a, static_cast<Residue>(cfg.b % ctx.p), mode);
        } else if (cfg.kind == "kloosterman") {
            j["k"] = cfg.k % ctx.p;
            j["l"] = cfg.l % ctx.p;
            value = kloosterman_over_H(ctx, *h, static_cast<Residue>(cfg.k % ctx.p), static_cast<Residue>(cfg.l % ctx.p));
        } else {
            j["k"] = cfg.k % ctx.p;
            j["a"] = a;
            value = inverse_shift_sum(ctx, *h, static_cast<Residue>(cfg.k % ctx.p), a);
        }
        j["mode"] = std::string(to_string(value.mode));
        write_value(j, value, sqrt_p);
    }

    Sink sink(cfg.output, out);
    if (cfg.format == Format::csv) write_flat_csv(sink, j);
    else sink.line(j.dump());
    return 0;
}

// ---------------------------------------------------------------- verify

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    SuiteOptions opts;
    opts.p_min = cfg.p_min;
    opts.p_max = cfg.p_max;
    opts.claims = cfg.claims;
    opts.mode = cfg.mode;
    opts.seed = cfg.seed;
    opts.budget = cfg.budget;
    opts.workers = cfg.workers;
    opts.epsilon = cfg.epsilon;
    const auto verdicts = run_suite(opts);

    Sink sink(cfg.output, out);
    if (cfg.format == Format::csv) sink.line(verdict_csv_header());
    std::map<Status, std::size_t> counts;
    for (const auto& v : verdicts) {
        ++counts[v.status];
        sink.line(cfg.format == Format::csv ? to_csv(v) : to_json(v).dump());
    }
    (*sink).flush();

    err << "verify: " << verdicts.size() << " verdicts, " << counts[Status::pass] << " pass, "
        << counts[Status::vacuous_pass] << " vacuous_pass, " << counts[Status::fail] << " fail, "
        << counts[Status::capacity_exceeded] << " capacity_exceeded\n";
    return counts[Status::fail] + counts[Status::capacity_exceeded] == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- scan

ScanRecord scan_prime(const RunConfig& cfg, std::uint32_t p) {
    const FieldCtx ctx = make_ctx(p);
    const Subgroup h = subgroup_near_sqrt(ctx);
    const double sqrt_p = std::sqrt(static_cast<double>(p));

    ScanRecord r;
    r.problem = cfg.problem;
    r.p = p;
    r.h = h.order;
    r.h_over_sqrt_p = h.order / sqrt_p;
    r.histogram.assign(kHistogramBins, 0);

    const bool multiplicative = cfg.problem == "1" || cfg.problem == "5";
    std::optional<Character> chi;
    if (multiplicative) {
        chi = select_character(ctx, cfg.chi);
        if (chi->is_principal()) throw Error(ErrorKind::PrincipalCharacter, "scan needs chi != chi_0");
        r.chi = chi->index();
    }

    double total = 0.0;
    auto record = [&](double ratio, std::vector<Param> params) {
        ++r.histogram[histogram_bin(ratio)];
        total += ratio;
        ++r.tuples;
        if (r.achiever.empty() || ratio > r.statistic) {
            r.statistic = ratio;
            r.achiever = std::move(params);
        }
    };
    auto achiever = [&](std::size_t i) {
        return static_cast<Residue>(std::get<std::int64_t>(r.achiever[i].value));
    };

    if (cfg.problem == "1") {
        // every shift at once; the achiever is re-evaluated by the naive engine
        r.mode = Mode::numeric;
        r.grid = "full";
        const auto values = shifted_sum_all_numeric(ctx, *chi, h.elements);
        for (Residue a = 1; a < p; ++a) record(std::abs(values[a]) / sqrt_p, {{"a", std::int64_t{a}}});
        const Mode check = resolve_mode(cfg.mode, ctx.group_order());
        r.recheck = shifted_sum(ctx, *chi, h.elements, achiever(0), check).abs() / sqrt_p;
    } else {
        const bool full = p <= 101;
        r.grid = full ? "full" : "sample";
        r.mode = multiplicative ? resolve_mode(cfg.mode, ctx.group_order()) : Mode::numeric;
        const char* first = cfg.problem == "5" ? "a" : "k";
        const char* second = cfg.problem == "5" ? "b" : (cfg.problem == "6a" ? "l" : "a");
        auto eval = [&](Residue u, Residue v) {
            if (cfg.problem == "5") return shifted_product_sum(ctx, *chi, h, u, v, r.mode).abs() / sqrt_p;
            if (cfg.problem == "6a") return kloosterman_over_H(ctx, h, u, v).abs() / sqrt_p;
            return inverse_shift_sum(ctx, h, u, v).abs() / sqrt_p;
        };
        auto visit = [&](Residue u, Residue v) {
            record(eval(u, v), {{first, std::int64_t{u}}, {second, std::int64_t{v}}});
        };
        const bool distinct = cfg.problem == "5";
        if (full) {
            for (Residue u = 1; u < p; ++u)
                for (Residue v = 1; v < p; ++v)
                    if (!distinct || u != v) visit(u, v);
        } else {
            Rng rng{cfg.seed, p, static_cast<std::uint64_t>(cfg.problem == "5" ? 5 : cfg.problem == "6a" ? 6 : 7)};
            for (int t = 0; t < 1000; ++t) {
                const auto u = static_cast<Residue>(1 + rng.below(p - 1));
                auto v = static_cast<Residue>(1 + rng.below(distinct ? p - 2 : p - 1));
                if (distinct && v >= u) ++v;
                visit(u, v);
            }
        }
        r.recheck = eval(achiever(0), achiever(1));
    }
    r.mean = r.tuples ? total / static_cast<double>(r.tuples) : 0.0;
    return r;
}

std::vector<ScanRecord> run_scan(const RunConfig& cfg) {
    const auto primes = primes_in(cfg.p_min, cfg.p_max);
    return parallel_map<ScanRecord>(primes.size(), cfg.workers, [&](std::size_t i) { return scan_prime(cfg, primes[i]); });
}

int cmd_scan(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const auto records = run_scan(cfg);
    Sink sink(cfg.output, out);
    if (cfg.format == Format::csv) sink.line(scan_csv_header());
    std::size_t mismatched = 0;
    for (const auto& r : records) {
        if (std::abs(r.recheck - r.statistic) > kRecheckTolerance) ++mismatched;
        sink.line(cfg.format == Format::csv ? to_csv(r) : to_json(r).dump());
    }
    (*sink).flush();
    err << "scan: problem " << cfg.problem << ", " << records.size() << " primes, " << mismatched
        << " achiever mismatches\n";
    return mismatched == 0 ? 0 : 1;
}

// ---------------------------------------------------------------- table

namespace {

std::string field_string(const Json& j, const char* key) {
    if (!j.contains(key)) return "";
    const auto& v = j.at(key);
    return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string object_string(const Json& j) {
    std::string out;
    for (auto it = j.begin(); it != j.end(); ++it) {
        if (!out.empty()) out += ';';
        out += it.key() + "=" + (it->is_string() ? it->get<std::string>() : it->dump());
    }
    return out;
}

}  // namespace

int cmd_table(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    std::ifstream in(cfg.input, std::ios::binary);
    if (!in) {
        err << "error: cannot read '" << cfg.input << "'\n";
        return 2;
    }
    std::vector<Json> verdicts, scans;
    std::string line;
    for (std::size_t n = 1; std::getline(in, line); ++n) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        Json j = Json::parse(line, nullptr, false);
        const bool verdict = j.is_object() && j.contains("claim") && j.contains("status");
        const bool scan = j.is_object() && j.contains("problem") && j.contains("p") && j.at("p").is_number_unsigned();
        if (!verdict && !scan) {
            err << "error: line " << n << " is not a verify or scan record\n";
            return 2;
        }
        (verdict ? verdicts : scans).push_back(std::move(j));
    }
    if (!verdicts.empty() && !scans.empty()) {
        err << "error: input mixes verify and scan records\n";
        return 2;
    }

    Sink sink(cfg.output, out);
    if (!scans.empty()) {
        std::stable_sort(scans.begin(), scans.end(),
                         [](const Json& x, const Json& y) { return x.at("p").get<std::uint64_t>() < y.at("p").get<std::uint64_t>(); });
        sink.line("problem,p,H,H_over_sqrt_p,chi,max_ratio,achiever");
        for (const auto& j : scans) {
            const std::vector<std::string> fields{field_string(j, "problem"), field_string(j, "p"),
                                                  field_string(j, "H"), field_string(j, "H_over_sqrt_p"),
                                                  field_string(j, "chi"), field_string(j, "max_ratio"),
                                                  j.contains("achiever") ? object_string(j.at("achiever")) : ""};
            std::string row;
            for (std::size_t i = 0; i < fields.size(); ++i) row += (i ? "," : "") + csv_field(fields[i]);
            sink.line(row);
        }
        return 0;
    }

    struct Tally {
        std::size_t records = 0;
        std::map<std::string, std::size_t> status;
        double min_margin = 0.0;
    };
    std::vector<std::string> order;
    std::map<std::string, Tally> tallies;
    for (const auto& j : verdicts) {
        const std::string claim = field_string(j, "claim");
        auto [it, fresh] = tallies.try_emplace(claim);
        if (fresh) order.push_back(claim);
        Tally& t = it->second;
        double margin = 0.0;
        const std::string m = field_string(j, "margin");
        std::from_chars(m.data(), m.data() + m.size(), margin);
        t.min_margin = t.records == 0 ? margin : std::min(t.min_margin, margin);
        ++t.records;
        ++t.status[field_string(j, "status")];
    }
    sink.line("claim,records,pass,vacuous_pass,fail,capacity_exceeded,pass_rate,min_margin");
    for (const auto& claim : order) {
        Tally& t = tallies[claim];
        const std::size_t passed = t.status["pass"] + t.status["vacuous_pass"];
        const double rate = static_cast<double>(passed) / static_cast<double>(t.records);
        sink.line(csv_field(claim) + "," + std::to_string(t.records) + "," + std::to_string(t.status["pass"]) + "," +
                  std::to_string(t.status["vacuous_pass"]) + "," + std::to_string(t.status["fail"]) + "," +
                  std::to_string(t.status["capacity_exceeded"]) + "," + format_double(rate) + "," +
                  format_double(t.min_margin));
    }
    return 0;
}

// ---------------------------------------------------------------- entry

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    auto parsed = parse_args(argc, argv, out, err);
    if (const int* code = std::get_if<int>(&parsed)) return *code;
    const RunConfig& cfg = std::get<RunConfig>(parsed);
    try {
        switch (cfg.command) {
            case Command::sum: return cmd_sum(cfg, out, err);
            case Command::verify: return cmd_verify(cfg, out, err);
            case Command::scan: return cmd_scan(cfg, out, err);
            case Command::table: return cmd_table(cfg, out, err);
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace charsum::cli
