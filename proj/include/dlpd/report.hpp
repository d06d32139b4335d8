#ifndef DLPD_REPORT_HPP
#define DLPD_REPORT_HPP

// Plain report records behind the command line: built from library results,
// serialised to JSON (rationals as "p/q" strings) and to TSV with a header.

#include "dlpd/classify.hpp"
#include "dlpd/conjclass.hpp"
#include "dlpd/dlcrit.hpp"
#include "dlpd/gfflag.hpp"
#include "dlpd/rational.hpp"
#include "dlpd/rootsys.hpp"
#include "dlpd/weyl.hpp"

#include <json.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace dlpd {

using nlohmann::json;

inline json vec_json(const Vec& v)
{
    json a = json::array();
    for (const auto& x : v)
        a.push_back(to_string(x));
    return a;
}

inline Vec vec_from_json(const json& j)
{
    Vec v;
    for (const auto& x : j)
        v.push_back(parse_rational(x.get<std::string>()));
    return v;
}

inline std::string join_ints(const std::vector<int>& v, const char* sep = ",")
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? sep : "") + std::to_string(v[i]);
    return s;
}

inline std::string join_vec(const Vec& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i)
        s += (i ? "," : "") + to_string(v[i]);
    return s;
}

inline std::string nu_string(const Cochar& nu)
{
    std::string s;
    for (std::size_t i = 0; i < nu.nu.size(); ++i)
        s += (i ? "|" : "") + join_ints(nu.nu[i]);
    return s;
}

/// "1,0,0" or "1,0|0,0" for several factors.
inline Cochar parse_nu(const std::string& text)
{
    Cochar nu;
    std::stringstream factors(text);
    std::string part;
    while (std::getline(factors, part, '|'))
    {
        std::vector<int> v;
        std::stringstream entries(part);
        std::string e;
        while (std::getline(entries, e, ','))
        {
            try
            {
                std::size_t used = 0;
                v.push_back(std::stoi(e, &used));
                if (used != e.size())
                    throw UsageError("");
            }
            catch (const std::exception&)
            {
                throw UsageError("malformed nu entry '" + e + "'");
            }
        }
        nu.nu.push_back(std::move(v));
    }
    if (nu.nu.empty())
        throw UsageError("empty nu");
    return nu;
}

struct RootsRecord
{
    std::string type;
    int rank = 0;
    std::string profile;
    std::size_t ambient_dim = 0;
    std::vector<Vec> simple_roots;
    std::vector<Vec> positive_roots;
    std::uint64_t group_order = 0;

    friend bool operator==(const RootsRecord&, const RootsRecord&) = default;

    static RootsRecord of(const RootSystem& rs)
    {
        return {kind_name(rs.kind()), rs.rank(), profile_name(rs.profile()), rs.ambient_dim(), rs.simple_roots(),
                rs.positive_roots(), rs.group_order()};
    }
};

inline void to_json(json& j, const RootsRecord& r)
{
    json simple = json::array(), pos = json::array();
    for (const auto& v : r.simple_roots)
        simple.push_back(vec_json(v));
    for (const auto& v : r.positive_roots)
        pos.push_back(vec_json(v));
    j = {{"type", r.type},       {"rank", r.rank},        {"profile", r.profile},         {"ambient_dim", r.ambient_dim},
         {"simple_roots", simple}, {"positive_roots", pos}, {"group_order", r.group_order}};
}

inline void from_json(const json& j, RootsRecord& r)
{
    r.type = j.at("type");
    r.rank = j.at("rank");
    r.profile = j.at("profile");
    r.ambient_dim = j.at("ambient_dim");
    r.simple_roots.clear();
    r.positive_roots.clear();
    for (const auto& v : j.at("simple_roots"))
        r.simple_roots.push_back(vec_from_json(v));
    for (const auto& v : j.at("positive_roots"))
        r.positive_roots.push_back(vec_from_json(v));
    r.group_order = j.at("group_order");
}

struct ParabolicRecord
{
    std::string type;
    int rank = 0;
    std::size_t positive_count = 0;
    std::vector<ParabolicRow> rows;

    friend bool operator==(const ParabolicRecord& a, const ParabolicRecord& b)
    {
        auto key = [](const ParabolicRow& r) {
            return std::make_tuple(r.node, r.levi_positive, r.difference, r.equality_with_rank);
        };
        if (a.type != b.type || a.rank != b.rank || a.positive_count != b.positive_count ||
            a.rows.size() != b.rows.size())
            return false;
        for (std::size_t i = 0; i < a.rows.size(); ++i)
            if (key(a.rows[i]) != key(b.rows[i]))
                return false;
        return true;
    }

    static ParabolicRecord of(const RootSystem& rs)
    {
        return {kind_name(rs.kind()), rs.rank(), rs.positive_roots().size(), rank_vs_dim_table(rs)};
    }
};

inline void to_json(json& j, const ParabolicRecord& r)
{
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"node", row.node},
                        {"levi_positive", row.levi_positive},
                        {"difference", row.difference},
                        {"equality_with_rank", row.equality_with_rank}});
    j = {{"type", r.type}, {"rank", r.rank}, {"positive_count", r.positive_count}, {"rows", rows}};
}

inline void from_json(const json& j, ParabolicRecord& r)
{
    r.type = j.at("type");
    r.rank = j.at("rank");
    r.positive_count = j.at("positive_count");
    r.rows.clear();
    for (const auto& row : j.at("rows"))
        r.rows.push_back({row.at("node"), row.at("levi_positive"), row.at("difference"), row.at("equality_with_rank")});
}

struct MinLengthRecord
{
    struct Step
    {
        int generator;
        std::string from;
        std::string to;
        friend bool operator==(const Step&, const Step&) = default;
    };

    std::string type;
    int rank = 0;
    int t = 1;
    std::string word;
    std::size_t length = 0;
    std::vector<Step> steps;
    std::string terminal;
    std::size_t terminal_length = 0;
    std::optional<std::size_t> bruteforce_min;

    friend bool operator==(const MinLengthRecord&, const MinLengthRecord&) = default;

    static MinLengthRecord of(const WeylElem& w, const ReductionChain& chain, std::optional<std::size_t> brute)
    {
        const RootSystem& rs = w.system();
        auto fmt = [&](const WeylElem& x) { return format_word(rs, reduced_word(x)); };
        MinLengthRecord r{kind_name(rs.kind()), rs.rank(), rs.factors(), fmt(w), w.length(), {}, fmt(chain.terminal),
                          chain.terminal.length(), brute};
        for (const auto& st : chain.steps)
            r.steps.push_back({st.generator, fmt(st.from), fmt(st.to)});
        return r;
    }
};

inline void to_json(json& j, const MinLengthRecord& r)
{
    json steps = json::array();
    for (const auto& s : r.steps)
        steps.push_back({{"generator", s.generator}, {"from", s.from}, {"to", s.to}});
    j = {{"type", r.type},     {"rank", r.rank},           {"t", r.t},
         {"word", r.word},     {"length", r.length},       {"steps", steps},
         {"terminal", r.terminal}, {"terminal_length", r.terminal_length}};
    j["bruteforce_min"] = r.bruteforce_min ? json(*r.bruteforce_min) : json(nullptr);
}

inline void from_json(const json& j, MinLengthRecord& r)
{
    r.type = j.at("type");
    r.rank = j.at("rank");
    r.t = j.at("t");
    r.word = j.at("word");
    r.length = j.at("length");
    r.steps.clear();
    for (const auto& s : j.at("steps"))
        r.steps.push_back({s.at("generator"), s.at("from"), s.at("to")});
    r.terminal = j.at("terminal");
    r.terminal_length = j.at("terminal_length");
    r.bruteforce_min = j.at("bruteforce_min").is_null() ? std::nullopt
                                                         : std::optional<std::size_t>(j.at("bruteforce_min"));
}

struct GPListRecord
{
    struct Entry
    {
        std::string datum;
        std::string word;
        std::size_t length;
        friend bool operator==(const Entry&, const Entry&) = default;
    };

    std::string type;
    int rank = 0;
    std::vector<Entry> data;

    friend bool operator==(const GPListRecord&, const GPListRecord&) = default;

    static GPListRecord of(Kind kind, int ell)
    {
        GPListRecord r{kind_name(kind), kind == Kind::A ? ell - 1 : ell, {}};
        const auto data = gp_enumerate(kind, ell);
        const auto rs = data.front().system();
        for (const auto& d : data)
        {
            const WeylElem w = gp_element(d, rs);
            r.data.push_back({format_datum(d), format_word(*rs, *w.word()), w.length()});
        }
        return r;
    }
};

inline void to_json(json& j, const GPListRecord& r)
{
    json data = json::array();
    for (const auto& e : r.data)
        data.push_back({{"datum", e.datum}, {"word", e.word}, {"length", e.length}});
    j = {{"type", r.type}, {"rank", r.rank}, {"data", data}};
}

inline void from_json(const json& j, GPListRecord& r)
{
    r.type = j.at("type");
    r.rank = j.at("rank");
    r.data.clear();
    for (const auto& e : j.at("data"))
        r.data.push_back({e.at("datum"), e.at("word"), e.at("length")});
}

struct CriterionRecord
{
    std::string type;
    int rank = 0;
    long q = 2;
    std::string datum;  // empty unless built from a signed block datum
    std::string word;
    std::string mode;
    bool feasible = false;
    std::optional<Vec> witness;
    std::optional<Vec> certificate;
    std::string method;  // "lp" or "recipe"

    friend bool operator==(const CriterionRecord&, const CriterionRecord&) = default;

    static CriterionRecord of(const CriterionReport& rep, const std::string& word, const std::string& datum = "",
                              const std::string& method = "lp")
    {
        const RootSystem& rs = rep.w.system();
        return {kind_name(rs.kind()), rs.rank(), rep.q,          datum,
                word,                 mode_name(rep.mode),        rep.result.feasible, rep.result.witness,
                rep.result.certificate, method};
    }
};

inline void to_json(json& j, const CriterionRecord& r)
{
    j = {{"type", r.type}, {"rank", r.rank}, {"q", r.q},           {"datum", r.datum},
         {"word", r.word}, {"mode", r.mode}, {"feasible", r.feasible}, {"method", r.method}};
    j["witness"] = r.witness ? vec_json(*r.witness) : json(nullptr);
    j["certificate"] = r.certificate ? vec_json(*r.certificate) : json(nullptr);
}

inline void from_json(const json& j, CriterionRecord& r)
{
    r.type = j.at("type");
    r.rank = j.at("rank");
    r.q = j.at("q");
    r.datum = j.at("datum");
    r.word = j.at("word");
    r.mode = j.at("mode");
    r.feasible = j.at("feasible");
    r.method = j.at("method");
    r.witness = j.at("witness").is_null() ? std::nullopt : std::optional<Vec>(vec_from_json(j.at("witness")));
    r.certificate =
        j.at("certificate").is_null() ? std::nullopt : std::optional<Vec>(vec_from_json(j.at("certificate")));
}

struct GPScanRecord
{
    std::string type;
    int rank = 0;
    long q = 2;
    bool all_pass = true;
    std::vector<CriterionRecord> reports;

    friend bool operator==(const GPScanRecord&, const GPScanRecord&) = default;

    static GPScanRecord of(const GPScan& s)
    {
        GPScanRecord r{kind_name(s.kind), s.kind == Kind::A ? s.ell - 1 : s.ell, s.q, s.all_pass, {}};
        const auto rs = gp_enumerate(s.kind, s.ell).front().system();
        for (const auto& rep : s.reports)
        {
            const WeylElem w = gp_element(rep.datum, rs);
            r.reports.push_back(
                CriterionRecord::of(rep.report, format_word(*rs, *w.word()), format_datum(rep.datum), rep.method));
        }
        return r;
    }
};

inline void to_json(json& j, const GPScanRecord& r)
{
    j = {{"type", r.type}, {"rank", r.rank}, {"q", r.q}, {"all_pass", r.all_pass}, {"reports", r.reports}};
}

inline void from_json(const json& j, GPScanRecord& r)
{
    r.type = j.at("type");
    r.rank = j.at("rank");
    r.q = j.at("q");
    r.all_pass = j.at("all_pass");
    r.reports = j.at("reports").get<std::vector<CriterionRecord>>();
}

struct CountRecord
{
    std::string what;  // "dl", "omega" or "period"
    int n = 0;
    long q = 2;
    int e = 1;
    std::optional<std::string> w;
    std::optional<std::vector<int>> nu;
    std::uint64_t count = 0;

    friend bool operator==(const CountRecord&, const CountRecord&) = default;
};

inline void to_json(json& j, const CountRecord& r)
{
    j = {{"what", r.what}, {"n", r.n}, {"q", r.q}, {"e", r.e}, {"count", r.count}};
    if (r.w)
        j["w"] = *r.w;
    if (r.nu)
        j["nu"] = *r.nu;
}

inline void from_json(const json& j, CountRecord& r)
{
    r.what = j.at("what");
    r.n = j.at("n");
    r.q = j.at("q");
    r.e = j.at("e");
    r.count = j.at("count");
    r.w = j.contains("w") ? std::optional<std::string>(j.at("w")) : std::nullopt;
    r.nu = j.contains("nu") ? std::optional<std::vector<int>>(j.at("nu").get<std::vector<int>>()) : std::nullopt;
}

struct VerdictRecord
{
    std::string type;
    int t = 1;
    std::string w;
    std::string nu;
    std::size_t length = 0;
    int r0 = 0;
    int rt1 = 0;
    std::size_t dim = 0;
    std::string verdict;
    std::string reason;
    std::optional<bool> counts_agree;

    friend bool operator==(const VerdictRecord&, const VerdictRecord&) = default;

    static VerdictRecord of(const GroupSpec& spec, const WeylElem& w, const Cochar& nu, const Verdict& v,
                            std::optional<bool> counts = std::nullopt)
    {
        const auto& c = v.chain;
        return {spec.name(), spec.t, format_word(w.system(), reduced_word(w)), nu_string(nu), c.length, c.r0, c.rt1,
                c.dim,       v.drinfeld() ? "DrinfeldCase(" + std::to_string(v.n) + "," + side_name(v.side) + ")"
                                          : "Excluded",
                v.reason,    counts};
    }
};

inline void to_json(json& j, const VerdictRecord& r)
{
    j = {{"type", r.type},     {"t", r.t},   {"w", r.w},     {"nu", r.nu},           {"length", r.length},
         {"r0", r.r0},         {"rt1", r.rt1}, {"dim", r.dim}, {"verdict", r.verdict}, {"reason", r.reason}};
    j["counts_agree"] = r.counts_agree ? json(*r.counts_agree) : json(nullptr);
}

inline void from_json(const json& j, VerdictRecord& r)
{
    r.type = j.at("type");
    r.t = j.at("t");
    r.w = j.at("w");
    r.nu = j.at("nu");
    r.length = j.at("length");
    r.r0 = j.at("r0");
    r.rt1 = j.at("rt1");
    r.dim = j.at("dim");
    r.verdict = j.at("verdict");
    r.reason = j.at("reason");
    r.counts_agree = j.at("counts_agree").is_null() ? std::nullopt : std::optional<bool>(j.at("counts_agree"));
}

struct ClassifyRecord
{
    int n_max = 0;
    int t_max = 0;
    long q = 2;
    int nu_bound = 0;
    std::uint64_t scanned = 0;
    std::vector<VerdictRecord> survivors;

    friend bool operator==(const ClassifyRecord&, const ClassifyRecord&) = default;

    static ClassifyRecord of(int n_max, int t_max, long q, int bound, const ClassificationScan& s)
    {
        ClassifyRecord r{n_max, t_max, q, bound, s.scanned, {}};
        for (const auto& e : s.survivors)
            r.survivors.push_back(VerdictRecord::of(e.spec, e.w, e.nu, e.verdict, e.counts_agree));
        return r;
    }
};

inline void to_json(json& j, const ClassifyRecord& r)
{
    j = {{"n_max", r.n_max},     {"t_max", r.t_max},     {"q", r.q}, {"nu_bound", r.nu_bound},
         {"scanned", r.scanned}, {"survivors", r.survivors}};
}

inline void from_json(const json& j, ClassifyRecord& r)
{
    r.n_max = j.at("n_max");
    r.t_max = j.at("t_max");
    r.q = j.at("q");
    r.nu_bound = j.at("nu_bound");
    r.scanned = j.at("scanned");
    r.survivors = j.at("survivors").get<std::vector<VerdictRecord>>();
}

// TSV: a header row, then one row per item.

inline std::string tsv(const RootsRecord& r)
{
    std::string s = "index\troot\n";
    for (std::size_t i = 0; i < r.positive_roots.size(); ++i)
        s += std::to_string(i) + "\t" + join_vec(r.positive_roots[i]) + "\n";
    return s;
}

inline std::string tsv(const ParabolicRecord& r)
{
    std::string s = "node\tlevi_positive\tdifference\tequality_with_rank\n";
    for (const auto& row : r.rows)
        s += std::to_string(row.node) + "\t" + std::to_string(row.levi_positive) + "\t" +
             std::to_string(row.difference) + "\t" + (row.equality_with_rank ? "yes" : "no") + "\n";
    return s;
}

inline std::string tsv(const MinLengthRecord& r)
{
    std::string s = "step\tgenerator\tfrom\tto\n";
    for (std::size_t i = 0; i < r.steps.size(); ++i)
        s += std::to_string(i + 1) + "\ts" + std::to_string(r.steps[i].generator) + "\t" + r.steps[i].from + "\t" +
             r.steps[i].to + "\n";
    return s;
}

inline std::string tsv(const GPListRecord& r)
{
    std::string s = "datum\tword\tlength\n";
    for (const auto& e : r.data)
        s += e.datum + "\t" + e.word + "\t" + std::to_string(e.length) + "\n";
    return s;
}

inline std::string tsv_row(const CriterionRecord& r)
{
    return r.type + "\t" + std::to_string(r.rank) + "\t" + std::to_string(r.q) + "\t" + r.datum + "\t" + r.word +
           "\t" + r.mode + "\t" + (r.feasible ? "feasible" : "infeasible") + "\t" +
           (r.witness ? join_vec(*r.witness) : "") + "\t" + (r.certificate ? join_vec(*r.certificate) : "") + "\t" +
           r.method + "\n";
}

inline constexpr const char* criterion_header = "type\trank\tq\tdatum\tword\tmode\tresult\twitness\tcertificate\tmethod\n";

inline std::string tsv(const CriterionRecord& r) { return criterion_header + tsv_row(r); }

inline std::string tsv(const GPScanRecord& r)
{
    std::string s = criterion_header;
    for (const auto& rep : r.reports)
        s += tsv_row(rep);
    return s;
}

inline std::string tsv(const CountRecord& r)
{
    return "what\tn\tq\te\tw\tnu\tcount\n" + r.what + "\t" + std::to_string(r.n) + "\t" + std::to_string(r.q) + "\t" +
           std::to_string(r.e) + "\t" + r.w.value_or("") + "\t" + (r.nu ? join_ints(*r.nu) : "") + "\t" +
           std::to_string(r.count) + "\n";
}

inline constexpr const char* verdict_header = "type\tt\tw\tnu\tl(w)\tr0\trt1\tdimX(N)\tverdict\treason\n";

inline std::string tsv_row(const VerdictRecord& r)
{
    return r.type + "\t" + std::to_string(r.t) + "\t" + r.w + "\t" + r.nu + "\t" + std::to_string(r.length) + "\t" +
           std::to_string(r.r0) + "\t" + std::to_string(r.rt1) + "\t" + std::to_string(r.dim) + "\t" + r.verdict +
           "\t" + r.reason + "\n";
}

inline std::string tsv(const VerdictRecord& r) { return verdict_header + tsv_row(r); }

inline std::string tsv(const ClassifyRecord& r)
{
    std::string s = verdict_header;
    for (const auto& v : r.survivors)
        s += tsv_row(v);
    return s;
}

} // namespace dlpd

#endif // DLPD_REPORT_HPP
