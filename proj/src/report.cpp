#include "primlab/report.hpp"

#include "primlab/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

namespace primlab {

std::string format_double(double v) {
    if (std::isnan(v) || std::isinf(v)) {
        // The JSON writer substitutes null for non-finite values; this
        // textual form is only reached from CSV/text renderers.
        return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
    }
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    // %.17g always round-trips; trim a redundant exponent '+' and leading
    // zeros are left as printed to stay platform-stable (glibc is fixed
    // format for the toolchain this project pins).
    return buf;
}

void JsonWriter::comma_if_needed() {
    if (!need_comma_.empty() && need_comma_.back())
        out_ += ',';
    if (!need_comma_.empty())
        need_comma_.back() = true;
}

JsonWriter& JsonWriter::begin_object() {
    comma_if_needed();
    out_ += '{';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_object() {
    need_comma_.pop_back();
    out_ += '}';
    return *this;
}

JsonWriter& JsonWriter::begin_array() {
    comma_if_needed();
    out_ += '[';
    need_comma_.push_back(false);
    return *this;
}

JsonWriter& JsonWriter::end_array() {
    need_comma_.pop_back();
    out_ += ']';
    return *this;
}

JsonWriter& JsonWriter::key(const std::string& k) {
    comma_if_needed();
    out_ += '"';
    out_ += json_escape(k);
    out_ += "\":";
    // The value that follows must not emit a comma.
    if (!need_comma_.empty())
        need_comma_.back() = false;
    return *this;
}

JsonWriter& JsonWriter::value(double v) {
    if (std::isnan(v) || std::isinf(v))
        return null_value();
    comma_if_needed();
    out_ += format_double(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::int64_t v) {
    comma_if_needed();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(std::uint64_t v) {
    comma_if_needed();
    out_ += std::to_string(v);
    return *this;
}

JsonWriter& JsonWriter::value(bool v) {
    comma_if_needed();
    out_ += v ? "true" : "false";
    return *this;
}

JsonWriter& JsonWriter::value(const std::string& v) {
    comma_if_needed();
    out_ += '"';
    out_ += json_escape(v);
    out_ += '"';
    return *this;
}

JsonWriter& JsonWriter::null_value() {
    comma_if_needed();
    out_ += "null";
    return *this;
}

std::string json_escape(const std::string& s) {
    std::string r;
    r.reserve(s.size());
    for (unsigned char c : s) {
        switch (c) {
        case '"': r += "\\\""; break;
        case '\\': r += "\\\\"; break;
        case '\n': r += "\\n"; break;
        case '\r': r += "\\r"; break;
        case '\t': r += "\\t"; break;
        default:
            if (c < 0x20) {
                char buf[8];
                std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                r += buf;
            } else {
                r += static_cast<char>(c);
            }
        }
    }
    return r;
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::invalid_argument("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        auto strip = [](std::string s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty())
            continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument(path + ":" + std::to_string(lineno) +
                                        ": expected key=value");
        std::string k = strip(line.substr(0, eq));
        std::string v = strip(line.substr(eq + 1));
        if (k.empty())
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": empty key");
        kv[k] = v;
    }
    return kv;
}

std::string RunConfig::canonical() const {
    std::ostringstream os;
    os << "sieve_limit=" << sieve_limit << ";abs_tol=" << format_double(tol.abs_tol)
       << ";max_terms=" << tol.max_terms << ";prime_cutoff=" << tol.prime_cutoff
       << ";tail_tol=" << format_double(tail_tol) << ";output=" << output << ";seed=" << seed
       << ";threads=" << threads;
    return os.str();
}

std::uint64_t fnv1a64(const std::string& s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string config_digest(const RunConfig& cfg) {
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(cfg.canonical())));
    return buf;
}

std::string ReportEnvelope::render(const std::string& payload_json) const {
    JsonWriter w;
    w.begin_object();
    w.field("command", command);
    w.field("config_digest", digest);
    if (started)
        w.field("started", *started);
    else
        w.null_field("started");
    if (finished)
        w.field("finished", *finished);
    else
        w.null_field("finished");
    w.key("payload");
    // payload is injected verbatim (already serialized JSON)
    std::string head = w.str();
    JsonWriter tail_w;
    tail_w.begin_object();
    tail_w.field("version", version);
    tail_w.end_object();
    std::string tail = tail_w.str();
    // tail currently looks like {"version":"..."}; splice as ,"version":...}
    return head + payload_json + "," + tail.substr(1);
}

void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn) {
    if (threads < 1)
        threads = 1;
    if (threads == 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::size_t nw = std::min<std::size_t>(threads, n);
    std::vector<std::thread> workers;
    std::vector<std::exception_ptr> errs(nw);
    for (std::size_t w = 0; w < nw; ++w) {
        workers.emplace_back([&, w] {
            try {
                // strided partition keeps the assignment deterministic
                for (std::size_t i = w; i < n; i += nw)
                    fn(i);
            } catch (...) {
                errs[w] = std::current_exception();
            }
        });
    }
    for (auto& t : workers)
        t.join();
    for (auto& e : errs)
        if (e)
            std::rethrow_exception(e);
}

} // namespace primlab
