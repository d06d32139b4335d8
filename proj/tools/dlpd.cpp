#include "dlpd/dlpd.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

using namespace dlpd;

namespace {

struct Options
{
    std::string type = "A";
    std::optional<int> rank;
    std::string profile = "bourbaki";
    int t = 1;
    long q = 2;
    int e = 1;
    int n = 3;
    std::string nu;
    std::string word;
    std::string datum;
    std::string mode = "full_D";
    std::string format = "pretty";
    std::uint64_t cap = 0;
    unsigned jobs = 1;
    int bound = 2;
    bool parabolic_table = false;
    bool brute_force = false;
};

// Set when a scan or cross-check turns up a property violation.
bool violation = false;

Kind kind_of(const Options& o) { return parse_kind(o.type); }

int rank_of(const Options& o)
{
    if (o.rank)
        return *o.rank;
    switch (kind_of(o))
    {
    case Kind::E6: return 6;
    case Kind::E7: return 7;
    case Kind::E8: return 8;
    case Kind::F4: return 4;
    case Kind::G2: return 2;
    default: throw UsageError("--rank is required for type " + o.type);
    }
}

RootSystemPtr system_of(const Options& o)
{
    auto rs = build_root_system(kind_of(o), rank_of(o), parse_profile(o.profile));
    return o.t == 1 ? rs : RootSystem::power(rs, o.t);
}

GfCaps caps_of(const Options& o)
{
    GfCaps caps;
    if (o.cap)
        caps.flags = o.cap;
    return caps;
}

// Rank as typed on the command line to the GP parameter ell.
int gp_ell(const Options& o) { return kind_of(o) == Kind::A ? rank_of(o) + 1 : rank_of(o); }

std::string vec_text(const Vec& v) { return "(" + join_vec(v) + ")"; }

template <class R>
void emit(const Options& o, const R& r, const std::string& pretty)
{
    if (o.format == "json")
        std::cout << json(r).dump(2) << "\n";
    else if (o.format == "tsv")
        std::cout << tsv(r);
    else
        std::cout << pretty;
}

std::string pretty(const ParabolicRecord& r)
{
    std::string s = r.type + " (rank " + std::to_string(r.rank) + ", " + std::to_string(r.positive_count) +
                    " positive roots)\nnode  levi  difference\n";
    std::string diffs;
    for (const auto& row : r.rows)
    {
        std::string line = std::to_string(row.node);
        line.resize(6, ' ');
        std::string levi = std::to_string(row.levi_positive);
        levi.resize(6, ' ');
        s += line + levi + std::to_string(row.difference) + (row.equality_with_rank ? "  = rank" : "") + "\n";
        diffs += (diffs.empty() ? "" : ",") + std::to_string(row.difference);
    }
    return s + "differences: " + diffs + "\n";
}

std::string pretty(const CriterionRecord& r)
{
    std::string s = r.feasible ? "feasible\n" : "infeasible\n";
    if (r.witness)
        s += "witness: " + vec_text(*r.witness) + "\n";
    if (r.certificate)
        s += "certificate: " + vec_text(*r.certificate) + "\n";
    return s;
}

std::string pretty(const VerdictRecord& r)
{
    std::string s = r.type + "  w = " + (r.w.empty() ? "1" : r.w) + "  nu = " + r.nu + "\n";
    s += "l(w) = " + std::to_string(r.length) + ", r0 = " + std::to_string(r.r0) + ", r*t1 = " +
         std::to_string(r.rt1) + ", dim X(N) = " + std::to_string(r.dim) + "\n";
    s += r.verdict + (r.reason.empty() ? "" : ": " + r.reason) + "\n";
    return s;
}

void run_roots(const Options& o)
{
    auto rs = system_of(o);
    if (o.parabolic_table)
    {
        auto r = ParabolicRecord::of(*rs);
        emit(o, r, pretty(r));
        return;
    }
    auto r = RootsRecord::of(*rs);
    std::string s = rs->name() + " (" + r.profile + "), " + std::to_string(r.positive_roots.size()) +
                    " positive roots, |W| = " + std::to_string(r.group_order) + "\nsimple:\n";
    for (const auto& v : r.simple_roots)
        s += "  " + vec_text(v) + "\n";
    s += "positive:\n";
    for (const auto& v : r.positive_roots)
        s += "  " + vec_text(v) + "\n";
    emit(o, r, s);
}

void run_min_length(const Options& o)
{
    auto rs = system_of(o);
    const WeylElem w = from_word(rs, parse_product_word(rs, o.word));
    const Frobenius f = o.t == 1 ? Frobenius::identity() : Frobenius::rotation(*rs);
    const auto chain = reduce_to_minimal(w, f);
    std::optional<std::size_t> brute;
    if (o.brute_force)
    {
        brute = min_length_bruteforce(w, f, o.cap ? o.cap : 100000);
        if (*brute != chain.terminal.length())
            violation = true;
    }
    auto r = MinLengthRecord::of(w, chain, brute);
    std::string s = "w = " + (r.word.empty() ? "1" : r.word) + " (length " + std::to_string(r.length) + ")\n";
    for (std::size_t i = 0; i < r.steps.size(); ++i)
        s += "  " + std::to_string(i + 1) + ". s" + std::to_string(r.steps[i].generator) + ": " + r.steps[i].from +
             " -> " + r.steps[i].to + "\n";
    s += "terminal: " + (r.terminal.empty() ? "1" : r.terminal) + " (length " + std::to_string(r.terminal_length) +
         ")\n";
    if (brute)
        s += "brute-force minimum: " + std::to_string(*brute) + "\n";
    emit(o, r, s);
}

void run_gp_list(const Options& o)
{
    auto r = GPListRecord::of(kind_of(o), gp_ell(o));
    std::string s;
    for (const auto& e : r.data)
        s += e.datum + "  " + (e.word.empty() ? "1" : e.word) + "  (length " + std::to_string(e.length) + ")\n";
    emit(o, r, s);
}

void run_dl_criterion(const Options& o)
{
    const CriterionMode mode = parse_mode(o.mode);
    if (!o.datum.empty())
    {
        const GPDatum d = parse_datum(kind_of(o), gp_ell(o), o.datum);
        const auto rs = d.system();
        const WeylElem w = gp_element(d, rs);
        auto r = CriterionRecord::of(check_dl_criterion(w, o.q, mode), format_word(*rs, *w.word()), format_datum(d));
        emit(o, r, pretty(r));
        return;
    }
    auto rs = system_of(o);
    const WeylElem w = from_word(rs, parse_product_word(rs, o.word));
    auto r = CriterionRecord::of(check_dl_criterion(w, o.q, mode), format_word(*rs, *w.word()));
    emit(o, r, pretty(r));
}

void run_gp_scan(const Options& o)
{
    const auto scan = scan_gp(kind_of(o), gp_ell(o), o.q, o.cap ? o.cap : 100000, o.jobs);
    auto r = GPScanRecord::of(scan);
    if (!r.all_pass)
        violation = true;
    std::string s;
    for (const auto& rep : r.reports)
        s += rep.datum + "  " + (rep.feasible ? "feasible" : "infeasible") + "  " + rep.method + "  " +
             (rep.witness ? vec_text(*rep.witness) : vec_text(rep.certificate.value_or(Vec{}))) + "\n";
    s += std::string("all_pass: ") + (r.all_pass ? "true" : "false") + "\n";
    emit(o, r, s);
}

void run_count_points(const Options& o)
{
    auto rs = build_root_system(Kind::A, o.n - 1);
    const Perm w = to_permutation(from_word(rs, parse_word(*rs, o.word)));
    CountRecord r{"dl", o.n, o.q, o.e, format_word(*rs, parse_word(*rs, o.word)), std::nullopt,
                  dl_point_count(o.n, o.q, o.e, w, caps_of(o))};
    emit(o, r, std::to_string(r.count) + "\n");
}

void run_omega(const Options& o)
{
    CountRecord r{"omega", o.n, o.q, o.e, std::nullopt, std::nullopt, omega_point_count(o.n, o.q, o.e, caps_of(o))};
    emit(o, r, std::to_string(r.count) + "\n");
}

void run_period_domain(const Options& o)
{
    const Cochar nu = parse_nu(o.nu);
    if (nu.nu.size() != 1)
        throw UsageError("period-domain takes a single factor nu");
    CountRecord r{"period", nu.n(),       o.q, o.e, std::nullopt, nu.nu[0],
                  period_point_count(nu, o.q, o.e, caps_of(o))};
    emit(o, r, std::to_string(r.count) + "\n");
}

void run_classify(const Options& o)
{
    if (!o.nu.empty())
    {
        const GroupSpec spec{kind_of(o), rank_of(o), o.t};
        spec.validate();
        auto rs = spec.system();
        const WeylElem w = from_word(rs, parse_product_word(rs, o.word));
        const Cochar nu = parse_nu(o.nu);
        auto r = VerdictRecord::of(spec, w, nu, theorem_verdict(spec, w, nu));
        emit(o, r, pretty(r));
        return;
    }
    const auto scan = classification_scan(o.n, o.t, o.q, o.bound, o.cap ? o.cap : 1000000);
    auto r = ClassifyRecord::of(o.n, o.t, o.q, o.bound, scan);
    std::string s;
    for (const auto& v : r.survivors)
    {
        s += v.type + "  w = " + v.w + "  nu = " + v.nu + "  " + v.verdict;
        if (v.counts_agree)
        {
            s += *v.counts_agree ? "  counts agree" : "  counts DISAGREE";
            if (!*v.counts_agree)
                violation = true;
        }
        s += "\n";
    }
    s += "scanned " + std::to_string(r.scanned) + ", survivors " + std::to_string(r.survivors.size()) + "\n";
    emit(o, r, s);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact root-system, Deligne-Lusztig and period-domain computations"};
    app.require_subcommand(1);
    Options o;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--format", o.format, "json | tsv | pretty")->check(CLI::IsMember({"json", "tsv", "pretty"}));
    };
    auto group = [&](CLI::App* sub) {
        sub->add_option("--type", o.type, "A..G2, e.g. A, B, D, E6, G2");
        sub->add_option("--rank", o.rank, "Lie rank (implied for E, F, G)");
        sub->add_option("--profile", o.profile, "bourbaki | paper5");
    };

    struct Cmd
    {
        const char* name;
        const char* help;
        void (*run)(const Options&);
    };
    const Cmd cmds[] = {
        {"roots", "simple and positive roots, or the maximal parabolic table", run_roots},
        {"parabolic-table", "positive roots outside each maximal Levi", run_roots},
        {"min-length", "reduce w to minimal length by cyclic shifts", run_min_length},
        {"gp-list", "the elements delta * w(lambda, eps) of types A, B, D", run_gp_list},
        {"dl-criterion", "decide the affineness criterion exactly", run_dl_criterion},
        {"gp-scan", "criterion for every GP element of a type", run_gp_scan},
        {"count-points", "points of X(w) over GF(q^e) for PGL_n", run_count_points},
        {"omega", "points of the Drinfeld space over GF(q^e)", run_omega},
        {"period-domain", "points of the period domain of nu over GF(q^e)", run_period_domain},
        {"classify", "verdict for (w, nu), or the scan over small groups", run_classify},
    };
    void (*chosen)(const Options&) = nullptr;
    for (const auto& c : cmds)
    {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        common(sub);
        const std::string name = c.name;
        if (name == "roots" || name == "parabolic-table" || name == "min-length" || name == "gp-list" ||
            name == "dl-criterion" || name == "gp-scan" || name == "classify")
            group(sub);
        if (name == "roots")
            sub->add_flag("--parabolic-table", o.parabolic_table, "print the maximal parabolic table");
        if (name == "min-length" || name == "classify")
            sub->add_option("--t", o.t, "restriction-of-scalars degree (classify scan: t max)");
        if (name == "min-length" || name == "dl-criterion" || name == "count-points" || name == "classify")
            sub->add_option("--word", o.word, "word such as \"s1 s2\"; '|' separates factors");
        if (name == "min-length")
            sub->add_flag("--brute-force", o.brute_force, "compare with the brute-force class minimum");
        if (name == "dl-criterion")
        {
            sub->add_option("--datum", o.datum, "GP datum such as \"lambda=2,1 eps=+,- delta=1\"");
            sub->add_option("--mode", o.mode, "full_D | chamber_C");
        }
        if (name == "dl-criterion" || name == "gp-scan" || name == "count-points" || name == "omega" ||
            name == "period-domain" || name == "classify")
            sub->add_option("--q", o.q, "q");
        if (name == "count-points" || name == "omega" || name == "period-domain")
            sub->add_option("--e", o.e, "field degree over GF(q)");
        if (name == "count-points" || name == "omega" || name == "classify")
            sub->add_option("--n", o.n, "n for PGL_n (classify scan: n max)");
        if (name == "period-domain" || name == "classify")
            sub->add_option("--nu", o.nu, "cocharacter \"1,0,0\"; '|' separates factors");
        if (name == "classify")
            sub->add_option("--bound", o.bound, "largest nu entry in the scan");
        if (name == "min-length" || name == "gp-scan" || name == "count-points" || name == "omega" ||
            name == "period-domain" || name == "classify")
            sub->add_option("--cap", o.cap, "enumeration cap");
        if (name == "gp-scan")
            sub->add_option("--jobs", o.jobs, "worker threads");
        sub->callback([&o, &chosen, c, name] {
            if (name == "parabolic-table")
                o.parabolic_table = true;
            chosen = c.run;
        });
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try
    {
        chosen(o);
    }
    catch (const UsageError& e)
    {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    }
    catch (const CapacityError& e)
    {
        std::cerr << "capacity error: " << e.what() << "\n";
        return 2;
    }
    catch (const InternalError& e)
    {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return violation ? 1 : 0;
}
