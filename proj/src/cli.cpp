#include "lacuna/cli.hpp"

#include "lacuna/arith.hpp"
#include "lacuna/fpseries.hpp"
#include "lacuna/optimality.hpp"
#include "lacuna/qforms.hpp"
#include "lacuna/series_io.hpp"
#include "lacuna/sievelab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace lacuna {

namespace {

using nlohmann::json;

constexpr std::uint64_t kDefaultSeed = 20170417;
constexpr std::uint64_t kSeriesCapGf2 = 100'000'000;
constexpr std::uint64_t kSeriesCapOdd = 10'000'000;
constexpr std::uint64_t kSweepCap = 1'000'000'000;

// Flag values that are wrong in combination, detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct CapError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ------------------------------------------------------------ result tables

using Cell = std::variant<std::int64_t, std::uint64_t, double, bool, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

std::string csv_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                return format_real(v);
            } else if constexpr (std::is_same_v<T, bool>) {
                return v ? "true" : "false";
            } else if constexpr (std::is_same_v<T, std::string>) {
                return v;
            } else {
                return std::to_string(v);
            }
        },
        c);
}

json json_cell(const Cell& c) {
    return std::visit(
        [](const auto& v) -> json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return std::stod(format_real(v));
            } else {
                return v;
            }
        },
        c);
}

struct RunState {
    bool json = false;
    std::uint64_t seed = kDefaultSeed;
    unsigned threads = 1;
    bool emit_config = false;
    bool unsafe_caps = false;
    bool timing = false;
};

struct Output {
    std::vector<Table> tables;
    json extra = json::object();
    std::vector<std::string> warnings;
};

void write_csv(std::ostream& out, const std::vector<Table>& tables) {
    bool first = true;
    for (const auto& t : tables) {
        if (!first) out << '\n';
        first = false;
        for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
        out << '\n';
        for (const auto& row : t.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
            out << '\n';
        }
    }
}

json tables_json(const std::vector<Table>& tables) {
    json results = json::object();
    for (const auto& t : tables) {
        json rows = json::array();
        for (const auto& row : t.rows) {
            json obj = json::object();
            for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = json_cell(row[i]);
            rows.push_back(std::move(obj));
        }
        results[t.name] = std::move(rows);
    }
    return results;
}

// ------------------------------------------------------------------ caps

void check_series_cap(const RunState& st, std::uint32_t ell, std::int64_t length) {
    const std::uint64_t cap = ell == 2 ? kSeriesCapGf2 : kSeriesCapOdd;
    if (length < 0) throw UsageError("precision must be nonnegative");
    if (!st.unsafe_caps && static_cast<std::uint64_t>(length) > cap) {
        throw CapError("series length " + std::to_string(length) + " exceeds the cap " + std::to_string(cap) +
                       " for modulus " + std::to_string(ell) + " (override with --unsafe-caps)");
    }
}

void check_sweep_cap(const RunState& st, std::uint64_t x) {
    if (!st.unsafe_caps && x > kSweepCap) {
        throw CapError("X = " + std::to_string(x) + " exceeds the sweep cap " + std::to_string(kSweepCap) +
                       " (override with --unsafe-caps)");
    }
}

void check_modulus_flag(std::uint32_t ell) {
    if (!is_prime_modulus(ell)) throw UsageError("--modulus must be a prime below 2^31");
}

// ------------------------------------------------------------ subcommands

Output cmd_expand(const RunState& st, const std::string& form, std::uint32_t ell, std::int64_t prec, bool all_rows) {
    check_modulus_flag(ell);
    check_series_cap(st, ell, prec);
    const auto f = make_form(form, ell, prec);
    Output o;
    Table t{"series", {"exponent", "coefficient"}, {}};
    for (std::size_t i = 0; i < f.series.length(); ++i) {
        const auto c = f.series.at(i);
        if (c == 0 && !all_rows) continue;
        t.rows.push_back({f.series.offset() + static_cast<std::int64_t>(i), std::uint64_t{c}});
    }
    o.tables.push_back(std::move(t));
    o.extra["envelope"] = to_json(f.series);
    o.extra["meta"] = {{"twice_weight", f.meta.twice_weight}, {"level", f.meta.level}, {"modulus", f.meta.modulus}};
    return o;
}

std::vector<std::int64_t> checkpoints(std::int64_t x) {
    std::vector<std::int64_t> out;
    for (std::int64_t c = 1000; c < x; c *= 10) out.push_back(c);
    out.push_back(x);
    return out;
}

Output cmd_count_nonzero(const RunState& st, const std::string& form, std::uint32_t ell, std::int64_t x,
                         const std::string& index_by) {
    check_modulus_flag(ell);
    if (x < 0) throw UsageError("--x must be nonnegative");
    Table t{"growth", {"X", "count", "sqrt_over_loglog", "ratio"}, {}};
    const auto points = checkpoints(x);
    std::vector<std::uint64_t> counts;

    if (form == "partition" && index_by == "n") {
        check_series_cap(st, ell, x + 1);
        const auto p = partition_numbers_mod(ell, static_cast<std::size_t>(x) + 1);
        std::uint64_t running = 0;
        std::size_t next = 0;
        while (next < points.size() && points[next] < 1) {
            counts.push_back(0);
            ++next;
        }
        for (std::int64_t n = 1; n <= x; ++n) {
            running += p[static_cast<std::size_t>(n)] != 0;
            while (next < points.size() && points[next] == n) {
                counts.push_back(running);
                ++next;
            }
        }
    } else {
        check_series_cap(st, ell, x + 2);
        const auto f = make_form(form, ell, x + 1);
        // The natural index runs over n >= 1; exponent mode keeps the whole window.
        const std::uint64_t below = index_by == "n" && f.series.offset() <= 0 ? nonzero_count(f.series, 0) : 0;
        for (auto c : points) counts.push_back(nonzero_count(f.series, c) - (c >= 0 ? below : 0));
    }
    for (std::size_t i = 0; i < points.size(); ++i) {
        const double dx = static_cast<double>(points[i]);
        const double ref = std::sqrt(dx) / std::log(std::log(dx));
        t.rows.push_back({points[i], counts[i], ref, static_cast<double>(counts[i]) / ref});
    }
    Output o;
    o.tables.push_back(std::move(t));
    return o;
}

Table series_table(const std::string& name, const QSeries& s) {
    Table t{name, {"exponent", "coefficient"}, {}};
    for (std::size_t i = 0; i < s.length(); ++i) {
        if (const auto c = s.at(i); c != 0) t.rows.push_back({s.offset() + static_cast<std::int64_t>(i), std::uint64_t{c}});
    }
    return t;
}

Output cmd_hecke(const RunState& st, const std::string& form, std::uint32_t ell, std::uint64_t p, std::int64_t prec,
                 std::int64_t odd_ord_x) {
    check_modulus_flag(ell);
    check_series_cap(st, ell, prec);
    const auto h = make_form(form, ell, prec);
    const auto t = hecke_tp(h, p);
    Output o;
    o.tables.push_back(series_table("hecke", t.series));
    if (odd_ord_x >= 0) {
        bool constant = true;
        for (std::int64_t n = 1; n < t.series.end(); ++n) constant = constant && t.series.coeff_or_zero(n) == 0;
        const bool holds = odd_ord_vanishing_check(h, p, odd_ord_x);
        o.tables.push_back({"odd_ord_check", {"p", "x", "tp_constant", "holds"}, {{p, odd_ord_x, constant, holds}}});
    }
    return o;
}

Output cmd_pipeline(const RunState& st, const std::string& form, std::uint32_t ell, unsigned m, std::int64_t prec,
                    std::int64_t x, std::uint64_t u_max, std::uint64_t p_max) {
    check_modulus_flag(ell);
    check_series_cap(st, ell, prec);
    TaggedForm f = make_form(form, ell, prec);
    bool theta_applied = false;
    if (ell == 2 && f.meta.half_integral()) {
        f = multiply_theta0(f);
        theta_applied = true;
    }
    const TaggedForm h = holomorphize(f, m);
    const QSeries lead = normalize(h.series);
    if (x < 0) x = h.series.end() - 1;
    const auto count = nonzero_count(h.series, x);
    Output o;
    o.tables.push_back({"summary",
                        {"form", "modulus", "m", "theta0_applied", "twice_weight", "level", "leading_exponent",
                         "precision_end", "x", "nonzero_count"},
                        {{form, std::uint64_t{ell}, std::uint64_t{m}, theta_applied, std::int64_t{h.meta.twice_weight},
                          h.meta.level, lead.empty() ? h.series.end() : lead.offset(), h.series.end(), x, count}}});
    Table scan{"scan", {"u", "a_u", "primes_found", "primes"}, {}};
    for (const auto& row : scan_up_nonzero(h, u_max, p_max)) {
        std::string list;
        for (auto q : row.primes) list += (list.empty() ? "" : " ") + std::to_string(q);
        scan.rows.push_back({row.u, std::uint64_t{h.series.coeff_or_zero(static_cast<std::int64_t>(row.u))},
                             static_cast<std::uint64_t>(row.primes.size()), list});
    }
    o.tables.push_back(std::move(scan));
    return o;
}

Output cmd_pow2_square(std::int64_t n0, std::uint64_t level, unsigned m_max) {
    Output o;
    Table t{"solutions", {"m", "u", "y"}, {}};
    for (const auto& s : pow2_square_search(n0, level, m_max)) {
        Cell y = s.y;
        if (s.y.size() < 19) y = std::stoull(s.y);
        t.rows.push_back({std::uint64_t{s.m}, s.u, y});
    }
    o.tables.push_back(std::move(t));
    return o;
}

Output cmd_discriminant(std::uint64_t a, double c0) {
    const auto dec = fundamental_decomposition(a);
    const auto cls = classify_discriminant(dec.fund, c0);
    Output o;
    o.tables.push_back({"discriminant",
                        {"a", "fund", "sq", "h", "l_one", "good_proxy", "classification"},
                        {{a, dec.fund, dec.sq, class_number(dec.fund), l_one(dec.fund), cls == DiscClass::good_proxy,
                          std::string(to_string(cls))}}});
    return o;
}

Output cmd_agood(std::uint64_t a, double x, double cutoff, std::uint64_t terms) {
    const auto r = agood_compare(a, x, cutoff, terms);
    Output o;
    o.tables.push_back({"agood",
                        {"a", "fund", "sq", "X", "small_cutoff", "s", "lhs", "m1", "m1_tail", "m2_small", "m2_large",
                         "m2", "ratio_m1", "ratio_m2"},
                        {{r.a, r.fund, r.sq, r.x, r.small_cutoff, r.s, r.lhs, r.m1, r.m1_tail, r.m2_small, r.m2_large,
                          r.m2, r.ratio_m1, r.ratio_m2}}});
    return o;
}

std::vector<Cell> rep_row(const RepReport& r) { return {r.a, r.u, r.x, r.count, r.euler, r.bound, r.ratio}; }

const std::vector<std::string> kRepColumns = {"a", "u", "X", "count", "euler", "bound", "ratio"};

Output cmd_sieve_reps(const RunState& st, std::uint64_t a, std::uint64_t u, std::uint64_t x) {
    check_sweep_cap(st, x);
    Output o;
    o.tables.push_back({"reps", kRepColumns, {rep_row(count_prime_reps(a, u, x))}});
    return o;
}

std::vector<std::uint64_t> read_a_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open --a-file " + path);
    std::vector<std::uint64_t> out;
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
        for (auto& ch : line) {
            if (ch == ',' || ch == ';' || ch == '\t' || ch == '\r') ch = ' ';
        }
        std::istringstream ss(line);
        std::string tok;
        while (ss >> tok) {
            std::size_t used = 0;
            std::uint64_t v = 0;
            try {
                v = std::stoull(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || tok.front() == '-') throw UsageError("--a-file: bad integer '" + tok + "'");
            out.push_back(v);
        }
    }
    return out;
}

Output cmd_sieve_agg(const RunState& st, const std::string& a_file, std::uint64_t random_k, bool construction,
                     std::uint64_t z, std::uint64_t dcount, std::uint64_t u, std::uint64_t x) {
    check_sweep_cap(st, x);
    const int sources = (!a_file.empty()) + (random_k > 0) + construction;
    if (sources != 1) throw UsageError("exactly one of --a-file, --random, --construction is required");
    ASpec spec;
    if (!a_file.empty()) {
        spec.kind = ASpec::Kind::explicit_list;
        spec.values = read_a_file(a_file);
    } else if (random_k > 0) {
        spec.kind = ASpec::Kind::random_subset;
        spec.random_size = random_k;
    } else {
        spec.kind = ASpec::Kind::construction;
        const std::uint64_t zz = z != 0 ? z : default_z(x);
        std::vector<std::uint64_t> ds;
        for (const auto& c : choose_D(zz, dcount)) ds.push_back(c.d);
        spec.values = build_A(ds, x, zz);
    }
    const std::uint64_t limit = st.unsafe_caps ? std::numeric_limits<std::uint64_t>::max() : kSweepCap;
    const auto res = theorem2_experiment(spec, u, x, st.seed, st.threads, limit);
    Output o;
    Table per{"per_a", kRepColumns, {}};
    for (const auto& r : res.per_a) per.rows.push_back(rep_row(r));
    o.tables.push_back(std::move(per));
    const auto& ag = res.aggregate;
    o.tables.push_back({"aggregate",
                        {"A_size", "u", "X", "min_m", "represented", "theorem_rhs", "ratio", "per_a_total", "m0_extra",
                         "represented_m1"},
                        {{ag.a_size, ag.u, ag.x, std::uint64_t{ag.min_m}, ag.represented, ag.theorem_rhs, ag.ratio,
                          res.per_a_total, res.m0_extra, res.aggregate_m1.represented}}});
    o.extra["m_convention"] = "per-a counts use m >= 1; aggregate uses m >= 0 (represented_m1 uses m >= 1)";
    return o;
}

Output cmd_optimality(const RunState& st, std::uint64_t x, std::uint64_t z, std::uint64_t dcount) {
    check_sweep_cap(st, x);
    ConstructionParams p;
    p.x = x;
    p.z = z;
    p.d_count = dcount;
    p.threads = st.threads;
    const auto r = run_construction(p);
    Output o;
    o.warnings = r.warnings;
    Table chosen{"chosen", {"d", "l_one", "fundamental"}, {}};
    for (const auto& c : r.chosen) chosen.rows.push_back({c.d, c.l_value, c.fundamental});
    o.tables.push_back(std::move(chosen));
    const auto& m = r.moments;
    o.tables.push_back({"summary",
                        {"X", "Z", "d_count", "k_max", "A_size", "normalized_size", "pi_half_x", "sum_r", "sum_r2",
                         "represented", "cs_bound", "represented_fraction", "sum_r_normalized", "sum_r2_normalized"},
                        {{x, r.z, dcount, r.k_max, static_cast<std::uint64_t>(r.a_set.size()), r.normalized_size,
                          r.pi_half_x, m.sum_r, m.sum_r2, m.represented, m.cs_bound, r.represented_fraction,
                          r.sum_r_normalized, r.sum_r2_normalized}}});
    return o;
}

Output cmd_primes(const RunState& st, std::uint64_t y, bool count_only) {
    check_sweep_cap(st, y);
    Output o;
    if (count_only) {
        o.tables.push_back({"count", {"Y", "count"}, {{y, prime_count(y)}}});
    } else {
        Table t{"primes", {"p"}, {}};
        for_each_prime(y, [&](std::uint64_t p) { t.rows.push_back({p}); });
        o.tables.push_back(std::move(t));
    }
    return o;
}

// ------------------------------------------------------------ wiring

void add_common(CLI::App* sub, RunState& st) {
    sub->add_flag("--json", st.json, "Emit one JSON object instead of CSV");
    sub->add_option("--seed", st.seed, "Seed for randomized inputs");
    sub->add_option("--threads", st.threads, "Worker threads for parallel loops")->check(CLI::Range(1u, 1024u));
    sub->add_flag("--emit-config", st.emit_config, "Print the resolved configuration as JSON and exit");
    sub->add_flag("--unsafe-caps", st.unsafe_caps, "Lift the precision and sweep caps");
    sub->add_flag("--timing", st.timing, "Include wall-clock timing in JSON output");
}

json resolved_config(const CLI::App* sub, const RunState& st) {
    json flags = json::object();
    for (const CLI::Option* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        if (name == "help") continue;
        if (opt->get_type_size() == 0) {
            flags[name] = opt->count() > 0;
        } else if (opt->count() > 0) {
            flags[name] = opt->as<std::string>();
        } else {
            flags[name] = opt->get_default_str();
        }
    }
    return {{"subcommand", sub->get_name()},
            {"flags", flags},
            {"output", st.json ? "json" : "csv"},
            {"seed", st.seed},
            {"threads", st.threads}};
}

const std::vector<std::string> kFormNames = {"eta1", "partition", "theta0", "delta", "j2"};

}  // namespace

std::vector<std::string> cli_subcommands() {
    return {"expand", "count-nonzero", "hecke", "pipeline", "pow2-square", "discriminant",
            "agood", "sieve-reps", "sieve-agg", "optimality", "primes"};
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Coefficient counts of modular forms mod l, and the prime-representation experiments behind them",
                 "lacuna"};
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    RunState st;
    std::function<Output()> action;

    // expand
    std::string form;
    std::uint32_t ell = 2;
    std::int64_t prec = 0;
    bool all_rows = false;
    {
        auto* s = app.add_subcommand("expand", "Expand a named form mod l as exponent,coefficient rows");
        s->add_option("--form", form, "Form name")->required()->check(CLI::IsMember(kFormNames));
        s->add_option("--modulus", ell, "Prime modulus l");
        s->add_option("--prec", prec, "Precision: exponents below this are computed")->required();
        s->add_flag("--all-rows", all_rows, "Also emit zero coefficients");
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_expand(st, form, ell, prec, all_rows); }; });
    }

    // count-nonzero
    std::int64_t x_int = 0;
    std::string index_by = "n";
    {
        auto* s = app.add_subcommand("count-nonzero", "Growth table of #{n <= X : a_n != 0 mod l}");
        s->add_option("--form", form, "Form name")->required()->check(CLI::IsMember(kFormNames));
        s->add_option("--modulus", ell, "Prime modulus l");
        s->add_option("--x", x_int, "Largest index counted")->required();
        s->add_option("--index-by", index_by, "Count over the natural index n or over q-exponents")
            ->check(CLI::IsMember({"n", "exponent"}));
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_count_nonzero(st, form, ell, x_int, index_by); }; });
    }

    // hecke
    std::uint64_t p_hecke = 2;
    std::int64_t odd_ord_x = -1;
    std::string hecke_form = "delta";
    {
        auto* s = app.add_subcommand("hecke", "Apply T_p to a form's q-expansion mod l");
        s->add_option("--form", hecke_form, "Form name")->check(CLI::IsMember(kFormNames));
        s->add_option("--modulus", ell, "Prime modulus l");
        s->add_option("--p", p_hecke, "Hecke prime p")->required();
        s->add_option("--prec", prec, "Precision of the input form")->required();
        s->add_option("--odd-ord-x", odd_ord_x, "Also run the odd-valuation vanishing check up to this X");
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_hecke(st, hecke_form, ell, p_hecke, prec, odd_ord_x); }; });
    }

    // pipeline
    unsigned m_exp = 2;
    std::int64_t pipe_x = -1;
    std::uint64_t u_max = 10;
    std::uint64_t p_max = 100;
    {
        auto* s = app.add_subcommand("pipeline", "Build h = f * eta1^(l^m) and scan a_{up}(h) mod l");
        s->add_option("--form", form, "Form name")->required()->check(CLI::IsMember(kFormNames));
        s->add_option("--modulus", ell, "Prime modulus l");
        s->add_option("--m", m_exp, "Exponent m in eta1^(l^m)");
        s->add_option("--prec", prec, "Precision of f")->required();
        s->add_option("--x", pipe_x, "Count nonzero coefficients of h up to X (default: whole window)");
        s->add_option("--u-max", u_max, "Largest u scanned");
        s->add_option("--p-max", p_max, "Largest prime p scanned");
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_pipeline(st, form, ell, m_exp, prec, pipe_x, u_max, p_max); }; });
    }

    // pow2-square
    std::int64_t n0 = 0;
    std::uint64_t level = 1;
    unsigned m_max = 40;
    {
        auto* s = app.add_subcommand("pow2-square", "Search 2^m + n0 = u y^2 over squarefree u | 2N");
        s->add_option("--n0", n0, "Nonzero shift n0")->required();
        s->add_option("--level", level, "Level N");
        s->add_option("--mmax", m_max, "Largest m searched");
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_pow2_square(n0, level, m_max); }; });
    }

    // discriminant
    std::uint64_t a_val = 1;
    double c0 = 0.1;
    {
        auto* s = app.add_subcommand("discriminant", "Decompose -4a and classify its fundamental discriminant");
        s->add_option("--a", a_val, "Positive integer a")->required()->check(CLI::PositiveNumber);
        s->add_option("--c0", c0, "Proxy threshold: bad iff L(1) < c0/log|D|");
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_discriminant(a_val, c0); }; });
    }

    // agood
    double x_real = 0;
    double small_cutoff = 100;
    std::uint64_t terms = 1'000'000;
    {
        auto* s = app.add_subcommand("agood", "Compare the chi_{-4a} Euler product with its L-value proxies");
        s->add_option("--a", a_val, "Positive integer a")->required()->check(CLI::PositiveNumber);
        s->add_option("--x", x_real, "X")->required();
        s->add_option("--small-cutoff", small_cutoff, "Prime cutoff for the split product");
        s->add_option("--terms", terms, "Terms of the L-series");
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_agood(a_val, x_real, small_cutoff, terms); }; });
    }

    // sieve-reps
    std::uint64_t u_val = 1;
    std::uint64_t x_u64 = 0;
    {
        auto* s = app.add_subcommand("sieve-reps", "Count primes p with up = a + m^2 <= X");
        s->add_option("--a", a_val, "Positive integer a")->required()->check(CLI::PositiveNumber);
        s->add_option("--u", u_val, "Multiplier u")->check(CLI::PositiveNumber);
        s->add_option("--x", x_u64, "X")->required();
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_sieve_reps(st, a_val, u_val, x_u64); }; });
    }

    // sieve-agg
    std::string a_file;
    std::uint64_t random_k = 0;
    bool construction = false;
    std::uint64_t z_val = 0;
    std::uint64_t dcount = 5;
    {
        auto* s = app.add_subcommand("sieve-agg", "Count primes p with up in A + squares and compare with the bound");
        auto* file_opt = s->add_option("--a-file", a_file, "File of integers forming A");
        auto* rand_opt = s->add_option("--random", random_k, "Use a seeded random K-subset of [1, X]");
        auto* cons_opt = s->add_flag("--construction", construction, "Use the small-L(1) construction for A");
        file_opt->excludes(rand_opt)->excludes(cons_opt);
        rand_opt->excludes(cons_opt);
        s->add_option("--z", z_val, "Construction Z (0: exp((log X)^(1/10)))");
        s->add_option("--dcount", dcount, "Construction |D|");
        s->add_option("--u", u_val, "Multiplier u")->check(CLI::PositiveNumber);
        s->add_option("--x", x_u64, "X")->required();
        add_common(s, st);
        s->callback([&] {
            action = [&] { return cmd_sieve_agg(st, a_file, random_k, construction, z_val, dcount, u_val, x_u64); };
        });
    }

    // optimality
    {
        auto* s = app.add_subcommand("optimality", "Run the A = {d k^2} construction and its moment bound");
        s->add_option("--x", x_u64, "X")->required();
        s->add_option("--z", z_val, "Z (0: exp((log X)^(1/10)))");
        s->add_option("--dcount", dcount, "Number of discriminants d");
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_optimality(st, x_u64, z_val, dcount); }; });
    }

    // primes
    std::uint64_t y_val = 0;
    bool count_only = false;
    {
        auto* s = app.add_subcommand("primes", "List or count primes up to Y");
        s->add_option("--y", y_val, "Upper limit Y")->required();
        s->add_flag("--count-only", count_only, "Print only the count");
        add_common(s, st);
        s->callback([&] { action = [&] { return cmd_primes(st, y_val, count_only); }; });
    }

    std::vector<std::string> rev;
    for (std::size_t i = args.size(); i-- > 1;) rev.push_back(args[i]);
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    const CLI::App* sub = app.get_subcommands().front();
    if (st.emit_config) {
        out << resolved_config(sub, st).dump(2) << '\n';
        return 0;
    }

    try {
        const auto t0 = std::chrono::steady_clock::now();
        Output o = action();
        const auto t1 = std::chrono::steady_clock::now();
        for (const auto& w : o.warnings) err << "warning: " << w << '\n';
        if (st.json) {
            json doc;
            doc["command"] = sub->get_name();
            doc["config"] = resolved_config(sub, st);
            json results = tables_json(o.tables);
            for (auto& [k, v] : o.extra.items()) results[k] = v;
            if (!o.warnings.empty()) results["warnings"] = o.warnings;
            doc["results"] = std::move(results);
            if (st.timing) {
                doc["timing"] = {{"wall_ms", std::chrono::duration<double, std::milli>(t1 - t0).count()}};
            } else {
                doc["timing"] = nullptr;
            }
            out << doc.dump(2) << '\n';
        } else {
            write_csv(out, o.tables);
        }
        return 0;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const CapError& e) {
        err << "resource cap exceeded: " << e.what() << '\n';
        return 2;
    } catch (const std::length_error& e) {
        err << "resource limit: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "invalid argument: " << e.what() << '\n';
        return 2;
    } catch (const std::out_of_range& e) {
        err << "out of range: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
}

}  // namespace lacuna
