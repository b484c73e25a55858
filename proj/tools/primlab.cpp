// primlab: command-line front end over the prime-layer / primitive-set /
// density library.  One subcommand per module; every invocation emits a
// single report (JSON envelope, CSV, or text) to stdout or --report FILE.
//
// Exit codes: 0 = success / all checks pass, 1 = computed but a check
// failed, 2 = usage or configuration error, 3 = resource or convergence
// limit hit.

#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "primlab/arith.hpp"
#include "primlab/density.hpp"
#include "primlab/errors.hpp"
#include "primlab/mertens.hpp"
#include "primlab/primsets.hpp"
#include "primlab/report.hpp"
#include "primlab/special.hpp"
#include "primlab/strongprime.hpp"
#include "primlab/suite.hpp"

namespace {

using namespace primlab;

struct CliState {
    RunConfig cfg;
    std::string report_path; // empty = stdout
    bool stamp = false;
    std::string started;
};

std::string iso_utc_now() {
    std::time_t t = std::time(nullptr);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// ---------------------------------------------------------------- config

std::uint64_t parse_u64(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not a valid non-negative integer: " + s);
    }
}

double parse_real(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument(what + ": not a valid real number: " + s);
    }
}

void apply_config_file(RunConfig& cfg, const std::string& path) {
    const auto kv = parse_config_file(path);
    for (const auto& [k, v] : kv) {
        if (k == "sieve_limit") cfg.sieve_limit = parse_u64(v, k);
        else if (k == "threads") cfg.threads = static_cast<int>(parse_u64(v, k));
        else if (k == "output") cfg.output = v;
        else if (k == "seed") cfg.seed = parse_u64(v, k);
        else if (k == "abs_tol") cfg.tol.abs_tol = parse_real(v, k);
        else if (k == "max_terms") cfg.tol.max_terms = static_cast<int>(parse_u64(v, k));
        else if (k == "prime_cutoff") cfg.tol.prime_cutoff = parse_u64(v, k);
        else if (k == "tail_tol") cfg.tail_tol = parse_real(v, k);
        else throw std::invalid_argument("unknown config key: " + k);
    }
}

void validate_config(const RunConfig& cfg) {
    if (cfg.sieve_limit < 2) throw std::invalid_argument("sieve_limit must be >= 2");
    if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
    if (cfg.output != "json" && cfg.output != "csv" && cfg.output != "text")
        throw std::invalid_argument("output must be one of json, csv, text");
}

FactorSieve make_sieve(const RunConfig& cfg, std::uint64_t need) {
    if (need < 1000) need = 1000;
    if (need > cfg.sieve_limit)
        throw resource_error("needs a sieve of size " + std::to_string(need) +
                             " but sieve_limit is " + std::to_string(cfg.sieve_limit) +
                             " (raise --sieve-limit or PRIMLAB_SIEVE_LIMIT)");
    return build_sieve(need);
}

// ---------------------------------------------------------------- output

void emit(const CliState& st, const std::string& command, const std::string& body) {
    std::string rendered;
    if (st.cfg.output == "json") {
        ReportEnvelope env;
        env.command = command;
        env.digest = config_digest(st.cfg);
        if (st.stamp) {
            env.started = st.started;
            env.finished = iso_utc_now();
        }
        rendered = env.render(body);
    } else {
        rendered = body;
    }
    if (!rendered.empty() && rendered.back() != '\n') rendered += '\n';
    if (st.report_path.empty()) {
        std::cout << rendered;
    } else {
        std::ofstream f(st.report_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open report file: " + st.report_path);
        f << rendered;
    }
}

std::string bool_str(bool b) { return b ? "true" : "false"; }

// ------------------------------------------------------------- file input

std::vector<std::string> read_tokens(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open file: " + path);
    std::vector<std::string> out;
    std::string line;
    while (std::getline(f, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::string tok;
        while (ls >> tok) out.push_back(tok);
    }
    return out;
}

std::vector<double> read_real_grid(const std::string& path) {
    std::vector<double> grid;
    for (const auto& t : read_tokens(path)) grid.push_back(parse_real(t, "grid entry"));
    if (grid.empty()) throw std::invalid_argument("grid file is empty: " + path);
    return grid;
}

std::vector<std::uint64_t> read_integer_set(const std::string& path) {
    std::vector<std::uint64_t> v;
    for (const auto& t : read_tokens(path)) v.push_back(parse_u64(t, "set entry"));
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<double> parse_real_list(const std::string& csv) {
    std::vector<double> out;
    std::string item;
    std::istringstream ss(csv);
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_real(item, "list entry"));
    }
    if (out.empty()) throw std::invalid_argument("empty value list: " + csv);
    return out;
}

// ------------------------------------------------------------ subcommands

int cmd_layers(const CliState& st, unsigned k_max, std::uint64_t x, bool enumerate) {
    if (x < 3)
        throw std::invalid_argument("layers: the bound is only claimed for x >= 3");
    if (enumerate && st.cfg.output == "csv")
        throw std::invalid_argument("layers: --enumerate requires json or text output");
    const FactorSieve sieve = make_sieve(st.cfg, x);
    const LayerBoundReport rep = check_layer_bound(sieve, k_max, {x});

    std::string body;
    if (st.cfg.output == "json") {
        JsonWriter w;
        w.begin_array();
        for (const auto& r : rep.rows) {
            w.begin_object();
            w.field("k", r.k).field("x", r.x).field("count", r.count);
            w.field("bound", r.bound).field("pass", r.pass);
            if (enumerate) {
                w.key("elements").begin_array();
                for (std::uint64_t n : enumerate_layer(sieve, r.k, r.x)) w.value(n);
                w.end_array();
            }
            w.end_object();
        }
        w.end_array();
        body = w.str();
    } else if (st.cfg.output == "csv") {
        std::ostringstream os;
        os << "k,x,count,bound,pass\n";
        for (const auto& r : rep.rows)
            os << r.k << ',' << r.x << ',' << r.count << ',' << format_double(r.bound)
               << ',' << bool_str(r.pass) << '\n';
        body = os.str();
    } else {
        std::ostringstream os;
        for (const auto& r : rep.rows) {
            os << "k=" << r.k << " x=" << r.x << " count=" << r.count
               << " bound=" << format_double(r.bound) << " "
               << (r.pass ? "pass" : "FAIL") << '\n';
            if (enumerate) {
                os << "  elements:";
                for (std::uint64_t n : enumerate_layer(sieve, r.k, r.x)) os << ' ' << n;
                os << '\n';
            }
        }
        body = os.str();
    }
    emit(st, "layers", body);
    return rep.all_pass ? 0 : 1;
}

int cmd_gamma_k(const CliState& st, unsigned k, double z, const std::string& method,
                std::uint64_t cutoff) {
    if (!(z > 0.0 && z <= 2.0))
        throw std::invalid_argument("gamma-k: z must be in (0, 2]");
    GammaKResult res;
    if (method == "quadrature") {
        QuadratureConfig qc;
        qc.tail_tol = st.cfg.tail_tol;
        res = gamma_k(k, z, qc, st.cfg.tol);
    } else if (method == "direct") {
        const FactorSieve sieve = make_sieve(st.cfg, cutoff);
        const DirectSumResult ds = direct_sum_oracle(sieve, k, z, cutoff);
        res.k = k;
        res.z = z;
        res.value = ds.partial;
        res.est_error = ds.tail_bound;
        res.method = "direct_sum";
    } else { // asymptotic
        AsymptoticVariant variant;
        if (z < 1.0) variant = AsymptoticVariant::sub1;
        else if (z == 1.0) variant = AsymptoticVariant::eq1;
        else if (z < 2.0) variant = AsymptoticVariant::super1;
        else variant = AsymptoticVariant::eq2;
        res.k = k;
        res.z = z;
        res.value = gamma_k_asymptotic(k, z, variant, st.cfg.tol);
        res.est_error = 0.0;
        res.method = "asymptotic";
    }

    const std::string digest = config_digest(st.cfg);
    std::string body;
    if (st.cfg.output == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("k", res.k).field("z", res.z).field("value", res.value);
        w.field("est_error", res.est_error).field("method", res.method);
        w.field("config_digest", digest);
        w.end_object();
        body = w.str();
    } else if (st.cfg.output == "csv") {
        std::ostringstream os;
        os << "k,z,value,est_error,method,config_digest\n"
           << res.k << ',' << format_double(res.z) << ',' << format_double(res.value)
           << ',' << format_double(res.est_error) << ',' << res.method << ',' << digest
           << '\n';
        body = os.str();
    } else {
        std::ostringstream os;
        os << "gamma_" << res.k << "(" << format_double(res.z)
           << ") = " << format_double(res.value) << " (est_error "
           << format_double(res.est_error) << ", method " << res.method << ")\n";
        body = os.str();
    }
    emit(st, "gamma-k", body);
    return 0;
}

int cmd_mertens_bundle(const CliState& st, std::uint64_t q, double z,
                       std::uint64_t cutoff) {
    const FactorSieve sieve = make_sieve(st.cfg, std::max(q, cutoff) + 1000);
    const MertensBundle b = mertens_bundle(sieve, q, z, cutoff);

    std::string body;
    if (st.cfg.output == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("q", b.q).field("z", b.z).field("mu", b.mu);
        w.field("m_lower", b.m_lower).field("M_upper", b.M_upper);
        w.field("r_upper", b.r_upper);
        w.end_object();
        body = w.str();
    } else if (st.cfg.output == "csv") {
        std::ostringstream os;
        os << "q,z,mu,m_lower,M_upper,r_upper\n"
           << b.q << ',' << format_double(b.z) << ',' << format_double(b.mu) << ','
           << format_double(b.m_lower) << ',' << format_double(b.M_upper) << ','
           << format_double(b.r_upper) << '\n';
        body = os.str();
    } else {
        std::ostringstream os;
        os << "mu_" << b.q << "(" << format_double(b.z) << ") = " << format_double(b.mu)
           << "\nm_lower = " << format_double(b.m_lower)
           << "\nM_upper = " << format_double(b.M_upper)
           << "\nr_upper = " << format_double(b.r_upper) << '\n';
        body = os.str();
    }
    emit(st, "mertens", body);
    return 0;
}

int cmd_mertens_check(const CliState& st, const std::string& check,
                      const std::string& grid_path) {
    const std::vector<double> grid = read_real_grid(grid_path);
    double hi = 2.0;
    for (double x : grid) hi = std::max(hi, x);
    const FactorSieve sieve = make_sieve(st.cfg, static_cast<std::uint64_t>(hi) + 2);
    const GridCheckReport rep = check == "mertens3" ? mertens3_check(sieve, grid)
                                                    : two_product_check(sieve, grid);

    std::string body;
    if (st.cfg.output == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("check", rep.check_name);
        w.key("rows").begin_array();
        for (const auto& r : rep.rows) {
            w.begin_object();
            w.field("x", r.x).field("lhs", r.lhs).field("bound", r.bound);
            w.field("pass", r.pass).field("skipped", r.skipped);
            if (!r.note.empty()) w.field("note", r.note);
            w.end_object();
        }
        w.end_array();
        w.field("all_pass", rep.all_pass);
        w.end_object();
        body = w.str();
    } else if (st.cfg.output == "csv") {
        std::ostringstream os;
        os << "x,lhs,bound,pass,skipped\n";
        for (const auto& r : rep.rows)
            os << format_double(r.x) << ',' << format_double(r.lhs) << ','
               << format_double(r.bound) << ',' << bool_str(r.pass) << ','
               << bool_str(r.skipped) << '\n';
        body = os.str();
    } else {
        std::ostringstream os;
        os << rep.check_name << ":\n";
        for (const auto& r : rep.rows) {
            os << "  x=" << format_double(r.x);
            if (r.skipped) os << " skipped (" << r.note << ")";
            else
                os << " lhs=" << format_double(r.lhs) << " bound=" << format_double(r.bound)
                   << ' ' << (r.pass ? "pass" : "FAIL");
            os << '\n';
        }
        os << (rep.all_pass ? "all pass" : "FAILURES present") << '\n';
        body = os.str();
    }
    emit(st, "mertens", body);
    return rep.all_pass ? 0 : 1;
}

int cmd_certify(const CliState& st, double z_lo, double z_hi, std::uint64_t q_max,
                std::uint64_t cutoff, double initial_width, double min_width) {
    const FactorSieve sieve = make_sieve(st.cfg, std::max(q_max, cutoff) + 1000);
    SubdivisionConfig sub;
    sub.initial_width = initial_width;
    sub.min_width = min_width;
    const CertificationReport rep =
        certify_strong(sieve, z_lo, z_hi, q_max, sub, st.cfg.threads, cutoff);

    std::string body;
    if (st.cfg.output == "json") {
        JsonWriter w;
        w.begin_object();
        w.key("z_range").begin_array().value(rep.z_lo).value(rep.z_hi).end_array();
        w.field("q_max", rep.q_max);
        w.key("primes").begin_array();
        for (const auto& pc : rep.primes) {
            w.begin_object();
            w.field("q", pc.q);
            w.key("intervals").begin_array();
            for (const auto& iv : pc.intervals) {
                w.begin_object();
                w.field("lo", iv.z_lo).field("hi", iv.z_hi).field("bound", iv.bound);
                w.end_object();
            }
            w.end_array();
            w.field("verdict", pc.verdict);
            w.end_object();
        }
        w.end_array();
        w.key("tail").begin_object();
        w.field("q_threshold", rep.tail.q_threshold);
        w.field("uniform_bound", rep.tail.uniform_bound);
        w.field("pass", rep.tail.pass);
        w.end_object();
        w.field("overall", rep.overall);
        w.end_object();
        body = w.str();
    } else if (st.cfg.output == "csv") {
        std::ostringstream os;
        os << "kind,q,intervals,max_bound,verdict\n";
        for (const auto& pc : rep.primes) {
            double worst = 0.0;
            for (const auto& iv : pc.intervals) worst = std::max(worst, iv.bound);
            os << "prime," << pc.q << ',' << pc.intervals.size() << ','
               << format_double(worst) << ',' << pc.verdict << '\n';
        }
        os << "tail," << rep.tail.q_threshold << ",1,"
           << format_double(rep.tail.uniform_bound) << ','
           << (rep.tail.pass ? "pass" : "inconclusive") << '\n';
        body = os.str();
    } else {
        std::ostringstream os;
        os << "strong-prime certification on z in [" << format_double(rep.z_lo) << ", "
           << format_double(rep.z_hi) << "], odd primes <= " << rep.q_max << '\n';
        for (const auto& pc : rep.primes) {
            double worst = 0.0;
            for (const auto& iv : pc.intervals) worst = std::max(worst, iv.bound);
            os << "  q=" << pc.q << ": " << pc.verdict << " (" << pc.intervals.size()
               << " intervals, max bound " << format_double(worst) << ")\n";
        }
        os << "  tail q>=" << rep.tail.q_threshold << ": uniform bound "
           << format_double(rep.tail.uniform_bound) << ' '
           << (rep.tail.pass ? "pass" : "inconclusive") << '\n'
           << (rep.overall ? "overall: certified" : "overall: NOT certified") << '\n';
        body = os.str();
    }
    emit(st, "certify", body);
    return rep.overall ? 0 : 1;
}

int cmd_primset_check(const CliState& st, const std::string& file, double z,
                      const std::string& order_arg) {
    if (!(z > 0.0 && z <= 2.0))
        throw std::invalid_argument("primset check: z must be in (0, 2]");
    const std::vector<std::uint64_t> a = read_integer_set(file);
    for (std::uint64_t v : a)
        if (v == 0) throw std::invalid_argument("primset check: elements must be >= 1");

    std::uint64_t need = 1000;
    for (std::uint64_t v : a) need = std::max(need, v);
    std::vector<std::uint64_t> listed;
    if (order_arg != "increasing") {
        listed = read_integer_set(order_arg);
        for (std::uint64_t p : listed) need = std::max(need, p);
    }
    const FactorSieve sieve = make_sieve(st.cfg, need);
    PrimeOrder order = PrimeOrder::increasing();
    if (!listed.empty()) {
        for (std::uint64_t p : listed)
            if (!sieve.is_prime(p))
                throw std::invalid_argument("order file: " + std::to_string(p) +
                                            " is not prime");
        order = PrimeOrder::with_prefix(listed);
    }

    const bool primitive = is_primitive(a, sieve);
    const bool l_primitive = is_l_primitive(a, order, sieve);
    const bool has_one = !a.empty() && a.front() == 1;
    const bool sums_defined = !has_one;

    std::optional<double> e_sum, dz, lhs;
    std::optional<bool> ineq_pass;
    if (sums_defined) {
        e_sum = erdos_sum(a, z, sieve);
        dz = dz_of_l(a, z, order, sieve);
        if (l_primitive) {
            const InequalityResult res =
                erdos_inequality_check(a, MultiplicativeWeight::z_over_p(z), order, sieve);
            lhs = res.lhs;
            ineq_pass = res.pass;
        }
    }
    const bool pass = l_primitive && (!ineq_pass.has_value() || *ineq_pass);

    std::string body;
    if (st.cfg.output == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("file", file).field("z", z).field("order", order_arg);
        w.field("count", static_cast<std::uint64_t>(a.size()));
        w.field("is_primitive", primitive).field("is_l_primitive", l_primitive);
        if (e_sum) w.field("erdos_sum", *e_sum); else w.null_field("erdos_sum");
        if (dz) w.field("dz_of_l", *dz); else w.null_field("dz_of_l");
        if (lhs) w.field("inequality_lhs", *lhs); else w.null_field("inequality_lhs");
        if (ineq_pass) w.field("inequality_pass", *ineq_pass);
        else w.null_field("inequality_pass");
        w.field("pass", pass);
        w.end_object();
        body = w.str();
    } else if (st.cfg.output == "csv") {
        std::ostringstream os;
        os << "file,z,order,count,is_primitive,is_l_primitive,erdos_sum,dz_of_l,"
              "inequality_lhs,inequality_pass,pass\n";
        os << file << ',' << format_double(z) << ',' << order_arg << ',' << a.size() << ','
           << bool_str(primitive) << ',' << bool_str(l_primitive) << ','
           << (e_sum ? format_double(*e_sum) : "") << ','
           << (dz ? format_double(*dz) : "") << ',' << (lhs ? format_double(*lhs) : "")
           << ',' << (ineq_pass ? bool_str(*ineq_pass) : "") << ',' << bool_str(pass)
           << '\n';
        body = os.str();
    } else {
        std::ostringstream os;
        os << "set " << file << " (" << a.size() << " elements), z=" << format_double(z)
           << ", order " << order_arg << '\n'
           << "  primitive: " << bool_str(primitive) << '\n'
           << "  L-primitive: " << bool_str(l_primitive) << '\n';
        if (e_sum) os << "  erdos_sum: " << format_double(*e_sum) << '\n';
        if (dz) os << "  dz_of_l: " << format_double(*dz) << '\n';
        if (lhs)
            os << "  inequality lhs: " << format_double(*lhs) << " ("
               << (*ineq_pass ? "pass" : "FAIL") << ")\n";
        os << (pass ? "pass" : "FAIL") << '\n';
        body = os.str();
    }
    emit(st, "primset check", body);
    return pass ? 0 : 1;
}

int cmd_primset_exhaust(const CliState& st, std::uint64_t lo, std::uint64_t hi,
                        const std::string& z_grid_csv) {
    const std::vector<double> z_grid = parse_real_list(z_grid_csv);
    for (double z : z_grid)
        if (!(z > 0.0 && z <= 2.0))
            throw std::invalid_argument("primset exhaust: z values must be in (0, 2]");
    const FactorSieve sieve = make_sieve(st.cfg, hi);

    const auto chains = all_antichains(hi, sieve, lo);
    const std::uint64_t bitmask = count_antichains_bitmask(hi, sieve, lo);
    const bool counts_agree = chains.size() == bitmask;

    struct ZRow {
        double z;
        std::uint64_t checked;
        double max_lhs;
        bool all_pass;
    };
    std::vector<ZRow> z_rows;
    const PrimeOrder inc = PrimeOrder::increasing();
    bool all_z_pass = true;
    for (double z : z_grid) {
        const MultiplicativeWeight f = MultiplicativeWeight::z_over_p(z);
        ZRow row{z, 0, 0.0, true};
        for (const auto& a : chains) {
            const InequalityResult res = erdos_inequality_check(a, f, inc, sieve);
            ++row.checked;
            row.max_lhs = std::max(row.max_lhs, res.lhs);
            row.all_pass = row.all_pass && res.pass;
        }
        all_z_pass = all_z_pass && row.all_pass;
        z_rows.push_back(row);
    }
    const bool overall = counts_agree && all_z_pass;

    std::string body;
    if (st.cfg.output == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("lo", lo).field("hi", hi);
        w.field("count_recursive", static_cast<std::uint64_t>(chains.size()));
        w.field("count_bitmask", bitmask).field("counts_agree", counts_agree);
        w.key("z_results").begin_array();
        for (const auto& r : z_rows) {
            w.begin_object();
            w.field("z", r.z).field("checked", r.checked).field("max_lhs", r.max_lhs);
            w.field("all_pass", r.all_pass);
            w.end_object();
        }
        w.end_array();
        w.field("overall", overall);
        w.end_object();
        body = w.str();
    } else if (st.cfg.output == "csv") {
        std::ostringstream os;
        os << "z,checked,max_lhs,all_pass\n";
        for (const auto& r : z_rows)
            os << format_double(r.z) << ',' << r.checked << ',' << format_double(r.max_lhs)
               << ',' << bool_str(r.all_pass) << '\n';
        body = os.str();
    } else {
        std::ostringstream os;
        os << "antichains of [" << lo << ", " << hi << "]: recursive " << chains.size()
           << ", bitmask " << bitmask << (counts_agree ? " (agree)" : " (MISMATCH)")
           << '\n';
        for (const auto& r : z_rows)
            os << "  z=" << format_double(r.z) << ": " << r.checked
               << " sets checked, max lhs " << format_double(r.max_lhs) << ", "
               << (r.all_pass ? "all pass" : "FAILURES") << '\n';
        os << (overall ? "overall: pass" : "overall: FAIL") << '\n';
        body = os.str();
    }
    emit(st, "primset exhaust", body);
    return overall ? 0 : 1;
}

int cmd_density(const CliState& st, std::uint64_t n, double z, const std::string& method,
                const std::string& emit_path, bool exact_rational) {
    if (n < 1) throw std::invalid_argument("density: N must be >= 1");
    if (!(z > 0.0)) throw std::invalid_argument("density: z must be > 0");
    if (exact_rational && n > 1000)
        throw std::invalid_argument("density: --exact-rational is limited to N <= 1000");

    AntichainMethod m = AntichainMethod::automatic;
    if (method == "flow" || exact_rational) m = AntichainMethod::flow;
    else if (method == "brute") m = AntichainMethod::brute;

    const FactorSieve sieve = make_sieve(st.cfg, n);
    const DivisibilityPoset poset = build_poset(sieve, n, z, st.cfg.threads);
    const AntichainSolution sol = max_weight_antichain(poset, m);
    const double denominator = denominator_sum(sieve, n, z);
    const double density = sol.weight / denominator;
    const std::string& method_name = sol.method;

    if (!emit_path.empty()) {
        std::ofstream f(emit_path, std::ios::binary);
        if (!f) throw std::invalid_argument("cannot open antichain file: " + emit_path);
        for (std::uint64_t v : sol.elements) f << v << '\n';
    }

    std::string body;
    if (st.cfg.output == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("N", n).field("z", z).field("weight", sol.weight);
        w.field("denominator", denominator).field("density", density);
        w.field("method", method_name).field("certificate_ok", sol.certificate_ok);
        w.end_object();
        body = w.str();
    } else if (st.cfg.output == "csv") {
        std::ostringstream os;
        os << "N,z,weight,denominator,density,method,certificate_ok\n"
           << n << ',' << format_double(z) << ',' << format_double(sol.weight) << ','
           << format_double(denominator) << ',' << format_double(density) << ','
           << method_name << ',' << bool_str(sol.certificate_ok) << '\n';
        body = os.str();
    } else {
        std::ostringstream os;
        os << "D_" << format_double(z) << "(" << n << ") = " << format_double(density)
           << " (weight " << format_double(sol.weight) << " / denominator "
           << format_double(denominator) << ", method " << method_name << ", certificate "
           << (sol.certificate_ok ? "ok" : "FAILED") << ")\n";
        body = os.str();
    }
    emit(st, "density", body);
    return sol.certificate_ok ? 0 : 1;
}

int cmd_suite(const CliState& st, const std::string& level_name) {
    const SuiteLevel level = parse_suite_level(level_name);
    const std::uint64_t required = suite_required_sieve(level);
    if (required > st.cfg.sieve_limit)
        throw resource_error("suite level '" + level_name + "' needs a sieve of size " +
                             std::to_string(required) + " but sieve_limit is " +
                             std::to_string(st.cfg.sieve_limit));
    const FactorSieve sieve = build_sieve(required);
    const std::vector<CriterionResult> results = run_suite(sieve, level, st.cfg.threads);

    bool overall = true;
    std::vector<std::string> failed;
    for (const auto& r : results) {
        overall = overall && r.pass;
        if (!r.pass) failed.push_back(r.name);
    }

    std::string body;
    if (st.cfg.output == "json") {
        JsonWriter w;
        w.begin_object();
        w.field("level", std::string(suite_level_name(level)));
        w.key("criteria").begin_array();
        for (const auto& r : results) {
            w.begin_object();
            w.field("id", r.id).field("name", r.name).field("pass", r.pass);
            w.field("scale_limited", r.scale_limited).field("detail", r.detail);
            w.end_object();
        }
        w.end_array();
        w.field("overall", overall);
        w.key("failed").begin_array();
        for (const auto& name : failed) w.value(name);
        w.end_array();
        w.end_object();
        body = w.str();
    } else if (st.cfg.output == "csv") {
        std::ostringstream os;
        os << "id,name,pass,scale_limited\n";
        for (const auto& r : results)
            os << r.id << ',' << r.name << ',' << bool_str(r.pass) << ','
               << bool_str(r.scale_limited) << '\n';
        body = os.str();
    } else {
        std::ostringstream os;
        os << "acceptance battery, level " << suite_level_name(level) << ":\n";
        for (const auto& r : results)
            os << "  [" << (r.pass ? "PASS" : "FAIL") << "] criterion " << r.id << " ("
               << r.name << ")" << (r.scale_limited ? " [scale-limited]" : "") << ": "
               << r.detail << '\n';
        os << (overall ? "overall: pass" : "overall: FAIL") << '\n';
        body = os.str();
    }
    emit(st, "suite", body);

    if (!overall) {
        std::cerr << "failed criteria:";
        for (const auto& name : failed) std::cerr << ' ' << name;
        std::cerr << '\n';
    }
    return overall ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CliState st;

    CLI::App app{"prime-layer sums, strong-prime certification, primitive-set "
                 "inequalities, and divisibility-antichain densities"};
    app.require_subcommand(1);

    // Global options (valid before or after the subcommand name).
    std::string config_path;
    std::uint64_t opt_sieve = 0;
    int opt_threads = 0;
    std::string opt_output, opt_report;
    std::uint64_t opt_seed = 0;
    auto* g_config = app.add_option("--config", config_path, "flat key=value config file");
    auto* g_sieve = app.add_option("--sieve-limit", opt_sieve, "largest sieved integer");
    auto* g_threads = app.add_option("--threads", opt_threads, "worker pool size");
    auto* g_output = app.add_option("--output", opt_output, "report format")
                         ->check(CLI::IsMember({"json", "csv", "text"}));
    auto* g_report = app.add_option("--report", opt_report, "write the report to FILE");
    auto* g_seed = app.add_option("--seed", opt_seed, "sampling seed (recorded in config)");
    auto* g_stamp = app.add_flag("--stamp", "fill start/finish timestamps in the envelope");

    // layers
    unsigned layers_k = 0;
    std::uint64_t layers_x = 0;
    bool layers_enum = false;
    auto* layers = app.add_subcommand("layers", "layer counts vs the explicit bound");
    layers->fallthrough();
    layers->add_option("--k", layers_k, "largest prime-factor count")
        ->required()
        ->check(CLI::Range(1, 64));
    layers->add_option("--x", layers_x, "range end")->required();
    layers->add_flag("--enumerate", layers_enum, "include the layer elements");

    // gamma-k
    unsigned gk_k = 0;
    double gk_z = 0.0;
    std::string gk_method = "quadrature";
    std::uint64_t gk_cutoff = 1'000'000;
    bool gk_json = false;
    auto* gammak = app.add_subcommand("gamma-k", "weighted layer sum gamma_k(z)");
    gammak->fallthrough();
    gammak->add_option("--k", gk_k, "layer index")->required()->check(CLI::Range(1, 1000));
    gammak->add_option("--z", gk_z, "weight parameter in (0, 2]")->required();
    gammak->add_option("--method", gk_method, "evaluation method")
        ->check(CLI::IsMember({"quadrature", "direct", "asymptotic"}));
    gammak->add_option("--cutoff", gk_cutoff, "direct-sum cutoff");
    gammak->add_flag("--json", gk_json, "force JSON output");

    // mertens
    std::string mt_check, mt_grid;
    bool mt_bundle = false;
    std::uint64_t mt_q = 0, mt_cutoff = 300;
    double mt_z = 0.0;
    auto* mertens = app.add_subcommand("mertens", "Mertens products, bounds, brackets");
    mertens->fallthrough();
    auto* mt_check_opt = mertens->add_option("--check", mt_check, "grid inequality check")
                             ->check(CLI::IsMember({"mertens3", "two-product"}));
    auto* mt_grid_opt = mertens->add_option("--grid", mt_grid, "file of grid values");
    auto* mt_bundle_opt =
        mertens->add_flag("--bundle", mt_bundle, "certified bracket bundle at a prime");
    auto* mt_q_opt = mertens->add_option("--q", mt_q, "odd prime anchor");
    auto* mt_z_opt = mertens->add_option("--z", mt_z, "weight parameter");
    mertens->add_option("--cutoff", mt_cutoff, "finite-product cutoff (>= 300)");

    // certify
    double ct_zlo = 0.44, ct_zhi = 2.0;
    std::uint64_t ct_qmax = 300, ct_cutoff = 300;
    double ct_init = 0.01, ct_min = 1e-6;
    auto* certify = app.add_subcommand("certify", "strong-prime certification sweep");
    certify->fallthrough();
    certify->add_option("--z-lo", ct_zlo, "lower end of the z range");
    certify->add_option("--z-hi", ct_zhi, "upper end of the z range");
    certify->add_option("--q-max", ct_qmax, "certify odd primes up to this bound");
    certify->add_option("--cutoff", ct_cutoff, "bracket cutoff (>= 300)");
    certify->add_option("--initial-width", ct_init, "initial subdivision width");
    certify->add_option("--min-width", ct_min, "subdivision floor");

    // primset (check | exhaust)
    auto* primset = app.add_subcommand("primset", "primitive / L-primitive set checks");
    primset->require_subcommand(1);
    primset->fallthrough();
    std::string ps_file, ps_order = "increasing";
    double ps_z = 0.0;
    auto* ps_check = primset->add_subcommand("check", "analyze one set from a file");
    ps_check->fallthrough();
    ps_check->add_option("--file", ps_file, "newline-separated integers")->required();
    ps_check->add_option("--z", ps_z, "weight parameter in (0, 2]")->required();
    ps_check->add_option("--order", ps_order,
                         "'increasing' or a file listing a prime-order prefix");
    std::uint64_t pe_lo = 2, pe_hi = 0;
    std::string pe_zgrid = "0.5,1,1.5,1.99";
    auto* ps_exhaust =
        primset->add_subcommand("exhaust", "check every antichain of a range");
    ps_exhaust->fallthrough();
    ps_exhaust->add_option("--hi", pe_hi, "range end (width <= 20)")->required();
    ps_exhaust->add_option("--lo", pe_lo, "range start");
    ps_exhaust->add_option("--z-grid", pe_zgrid, "comma-separated z values");

    // density
    std::uint64_t dn_n = 0;
    double dn_z = 0.0;
    std::string dn_method = "auto", dn_emit;
    bool dn_exact = false;
    auto* density = app.add_subcommand("density", "max-weight divisibility antichain");
    density->fallthrough();
    density->add_option("--N", dn_n, "range end")->required();
    density->add_option("--z", dn_z, "weight parameter (> 0)")->required();
    density->add_option("--method", dn_method, "solver")
        ->check(CLI::IsMember({"auto", "flow", "brute"}));
    density->add_option("--emit-antichain", dn_emit, "write the optimum to FILE");
    density->add_flag("--exact-rational", dn_exact,
                      "declared-rational certificate mode (N <= 1000)");

    // suite
    std::string su_level;
    auto* suite = app.add_subcommand("suite", "run the acceptance battery");
    suite->fallthrough();
    suite->add_option("--level", su_level, "battery scale")
        ->required()
        ->check(CLI::IsMember({"smoke", "desk", "extended"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        // Precedence: flag > config file > PRIMLAB_SIEVE_LIMIT > default.
        if (const char* env = std::getenv("PRIMLAB_SIEVE_LIMIT"))
            st.cfg.sieve_limit = parse_u64(env, "PRIMLAB_SIEVE_LIMIT");
        if (g_config->count()) apply_config_file(st.cfg, config_path);
        if (g_sieve->count()) st.cfg.sieve_limit = opt_sieve;
        if (g_threads->count()) st.cfg.threads = opt_threads;
        if (g_output->count()) st.cfg.output = opt_output;
        if (g_seed->count()) st.cfg.seed = opt_seed;
        if (g_report->count()) st.report_path = opt_report;
        st.stamp = g_stamp->count() > 0;
        if (gk_json && gammak->parsed()) st.cfg.output = "json";
        validate_config(st.cfg);
        st.started = iso_utc_now();

        if (layers->parsed()) return cmd_layers(st, layers_k, layers_x, layers_enum);
        if (gammak->parsed()) return cmd_gamma_k(st, gk_k, gk_z, gk_method, gk_cutoff);
        if (mertens->parsed()) {
            const bool has_check = mt_check_opt->count() > 0;
            if (has_check == mt_bundle)
                throw std::invalid_argument(
                    "mertens: pass exactly one of --check or --bundle");
            if (has_check) {
                if (!mt_grid_opt->count())
                    throw std::invalid_argument("mertens: --check requires --grid FILE");
                return cmd_mertens_check(st, mt_check, mt_grid);
            }
            if (!mt_q_opt->count() || !mt_z_opt->count())
                throw std::invalid_argument("mertens: --bundle requires --q and --z");
            (void)mt_bundle_opt;
            return cmd_mertens_bundle(st, mt_q, mt_z, mt_cutoff);
        }
        if (certify->parsed())
            return cmd_certify(st, ct_zlo, ct_zhi, ct_qmax, ct_cutoff, ct_init, ct_min);
        if (primset->parsed()) {
            if (ps_check->parsed()) return cmd_primset_check(st, ps_file, ps_z, ps_order);
            return cmd_primset_exhaust(st, pe_lo, pe_hi, pe_zgrid);
        }
        if (density->parsed())
            return cmd_density(st, dn_n, dn_z, dn_method, dn_emit, dn_exact);
        if (suite->parsed()) return cmd_suite(st, su_level);
        throw std::invalid_argument("no subcommand given");
    } catch (const resource_error& e) {
        std::cerr << "resource limit: " << e.what() << '\n';
        return 3;
    } catch (const convergence_error& e) {
        std::cerr << "convergence failure: " << e.what() << '\n';
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
}
