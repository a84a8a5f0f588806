#include "records.hpp"

#include <cmath>

namespace charsum::cli {

std::size_t histogram_bin(double ratio) {
    if (!(ratio >= 0.0)) return 0;
    return std::min<std::size_t>(static_cast<std::size_t>(std::floor(ratio * 10.0)), kHistogramBins - 1);
}

std::string format_double(double x) { return quantity_string(x); }

std::string csv_field(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

namespace {

std::string param_value(const Param& p) {
    if (const auto* i = std::get_if<std::int64_t>(&p.value)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&p.value)) return format_double(*d);
    return std::get<std::string>(p.value);
}

Json params_json(const std::vector<Param>& params) {
    Json out = Json::object();
    for (const auto& p : params) {
        if (const auto* i = std::get_if<std::int64_t>(&p.value)) out[p.key] = *i;
        else out[p.key] = param_value(p);
    }
    return out;
}

std::string join_csv(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line += ',';
        line += csv_field(fields[i]);
    }
    return line;
}

}  // namespace

std::string params_string(const std::vector<Param>& params) {
    std::string out;
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i) out += ';';
        out += params[i].key + "=" + param_value(params[i]);
    }
    return out;
}

Json to_json(const Verdict& v) {
    Json j;
    j["claim"] = v.claim;
    j["params"] = params_json(v.params);
    j["computed"] = quantity_string(v.computed);
    j["target"] = quantity_string(v.target);
    j["margin"] = format_double(v.margin);
    j["pass"] = v.pass;
    j["status"] = std::string(to_string(v.status));
    j["mode"] = std::string(to_string(v.mode));
    if (!v.note.empty()) j["note"] = v.note;
    return j;
}

Json to_json(const ScanRecord& r) {
    Json j;
    j["problem"] = r.problem;
    j["p"] = r.p;
    j["H"] = r.h;
    j["H_over_sqrt_p"] = format_double(r.h_over_sqrt_p);
    if (r.chi >= 0) j["chi"] = r.chi;
    j["mode"] = std::string(to_string(r.mode));
    j["grid"] = r.grid;
    j["tuples"] = r.tuples;
    j["max_ratio"] = format_double(r.statistic);
    j["mean_ratio"] = format_double(r.mean);
    j["achiever"] = params_json(r.achiever);
    j["achiever_ratio"] = format_double(r.recheck);
    j["histogram"] = r.histogram;
    return j;
}

std::string verdict_csv_header() { return "claim,params,computed,target,margin,pass,status,mode,note"; }

std::string to_csv(const Verdict& v) {
    return join_csv({v.claim, params_string(v.params), quantity_string(v.computed), quantity_string(v.target),
                     format_double(v.margin), v.pass ? "true" : "false", std::string(to_string(v.status)),
                     std::string(to_string(v.mode)), v.note});
}

std::string scan_csv_header() {
    return "problem,p,H,H_over_sqrt_p,chi,mode,grid,tuples,max_ratio,mean_ratio,achiever,achiever_ratio,histogram";
}

std::string to_csv(const ScanRecord& r) {
    std::string hist;
    for (std::size_t i = 0; i < r.histogram.size(); ++i) hist += (i ? " " : "") + std::to_string(r.histogram[i]);
    return join_csv({r.problem, std::to_string(r.p), std::to_string(r.h), format_double(r.h_over_sqrt_p),
                     r.chi >= 0 ? std::to_string(r.chi) : "", std::string(to_string(r.mode)), r.grid,
                     std::to_string(r.tuples), format_double(r.statistic), format_double(r.mean),
                     params_string(r.achiever), format_double(r.recheck), hist});
}

}  // namespace charsum::cli
