#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace primlab {

// Shortest round-trip decimal form of a double (17 significant digits,
// trailing zeros trimmed); "inf"/"-inf"/"nan" are never emitted -- such
// values are serialized as null by the JSON writer.
std::string format_double(double v);

// Incremental JSON writer producing deterministic byte-exact output:
// keys are emitted in insertion order, doubles via format_double, no
// whitespace except a single space after ':' and ',' at top nesting.
class JsonWriter {
  public:
    JsonWriter& begin_object();
    JsonWriter& end_object();
    JsonWriter& begin_array();
    JsonWriter& end_array();
    JsonWriter& key(const std::string& k);
    JsonWriter& value(double v);
    JsonWriter& value(std::int64_t v);
    JsonWriter& value(std::uint64_t v);
    JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
    JsonWriter& value(unsigned v) { return value(static_cast<std::uint64_t>(v)); }
    JsonWriter& value(bool v);
    JsonWriter& value(const std::string& v);
    JsonWriter& value(const char* v) { return value(std::string(v)); }
    JsonWriter& null_value();

    // key + value in one call
    template <typename T>
    JsonWriter& field(const std::string& k, const T& v) {
        key(k);
        return value(v);
    }
    JsonWriter& null_field(const std::string& k) {
        key(k);
        return null_value();
    }

    const std::string& str() const { return out_; }

  private:
    void comma_if_needed();
    std::string out_;
    std::vector<bool> need_comma_; // per nesting level
};

std::string json_escape(const std::string& s);

// Flat key=value configuration (one pair per line, '#' comments, blank
// lines ignored).  Unknown keys are rejected by the consumer, not here.
std::map<std::string, std::string> parse_config_file(const std::string& path);

struct SeriesTolerance {
    double abs_tol = 1e-13;
    int max_terms = 256;
    std::uint64_t prime_cutoff = 1'000'000;
};

struct RunConfig {
    std::uint64_t sieve_limit = 10'000'000;
    SeriesTolerance tol;
    double tail_tol = 1e-11;
    std::string output = "json"; // json | csv | text
    std::uint64_t seed = 0;
    int threads = 1;

    // Canonical one-line rendering used for the config digest.
    std::string canonical() const;
};

// FNV-1a 64-bit over the canonical config string, rendered as 16 hex chars.
std::string config_digest(const RunConfig& cfg);
std::uint64_t fnv1a64(const std::string& s);

// Envelope around every CLI report.  Timestamps are null unless stamping
// was explicitly requested, so repeated runs are byte-identical.
struct ReportEnvelope {
    std::string command;
    std::string digest;
    std::optional<std::string> started;
    std::optional<std::string> finished;
    std::string version = "0.1.0";

    // payload_json must be a complete JSON value.
    std::string render(const std::string& payload_json) const;
};

// Deterministic static-partition parallel map: calls fn(i) for i in
// [0, n) using `threads` workers.  Results must be written to
// pre-allocated slots by the caller; exceptions propagate.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

} // namespace primlab
