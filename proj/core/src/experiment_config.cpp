#include "lacuna/experiment_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "lacuna/errors.hpp"

namespace lacuna {

PeriodicFunction ExperimentConfig::build_function() const {
    if (fn_kind == FunctionKind::indicator) return centered_indicator(fn_lo, fn_hi);
    return TrigPolynomial(fn_cos, fn_sin);
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

static std::string join_rationals(const std::vector<mpq_class>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) out += ",";
        out += v[i].get_str();
    }
    return out;
}

static const char* to_string(SequenceKind k) {
    switch (k) {
        case SequenceKind::power: return "power";
        case SequenceKind::power_minus_one: return "power_minus_one";
        case SequenceKind::superlacunary: return "superlacunary";
        case SequenceKind::custom: return "custom";
    }
    return "?";
}
static const char* to_string(FunctionKind k) {
    return k == FunctionKind::cos_poly ? "cos_poly" : "indicator";
}
static const char* to_string(ConfigPermKind k) {
    switch (k) {
        case ConfigPermKind::identity: return "identity";
        case ConfigPermKind::shuffle: return "shuffle";
        case ConfigPermKind::block_sorted: return "block_sorted";
        case ConfigPermKind::pair_interleave: return "pair_interleave";
    }
    return "?";
}
static const char* to_string(StatisticKind k) {
    return k == StatisticKind::sums ? "sums" : "discrepancy";
}
static const char* to_string(PredictionKind k) {
    switch (k) {
        case PredictionKind::none: return "none";
        case PredictionKind::constant: return "constant";
        case PredictionKind::norm: return "norm";
        case PredictionKind::sigma_identity: return "sigma_identity";
        case PredictionKind::cos_formula: return "cos_formula";
    }
    return "?";
}

static std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string ExperimentConfig::serialize() const {
    std::ostringstream o;
    o << "sequence.kind = " << to_string(seq_kind) << "\n";
    if (seq_kind == SequenceKind::power || seq_kind == SequenceKind::power_minus_one)
        o << "sequence.base = " << seq_base << "\n";
    if (seq_kind == SequenceKind::custom) o << "sequence.path = " << seq_path << "\n";
    if (seq_length) o << "sequence.N = " << seq_length << "\n";

    o << "function.kind = " << to_string(fn_kind) << "\n";
    if (fn_kind == FunctionKind::cos_poly) {
        o << "function.params = " << join_rationals(fn_cos) << "\n";
        if (!fn_sin.empty()) o << "function.sin = " << join_rationals(fn_sin) << "\n";
    } else {
        o << "function.params = " << fn_lo.get_str() << "," << fn_hi.get_str() << "\n";
    }

    o << "permutation.kind = " << to_string(perm_kind) << "\n";
    if (perm_kind == ConfigPermKind::block_sorted)
        o << "permutation.theta = " << fmt_double(perm_theta) << "\n";
    if (perm_kind == ConfigPermKind::pair_interleave) {
        o << "permutation.query.a = " << query_a << "\n";
        o << "permutation.query.b = " << query_b << "\n";
        o << "permutation.query.c = " << query_c.get_str() << "\n";
        o << "permutation.growth = "
          << (perm_growth == PairGrowth::packed ? "packed" : "divergent") << "\n";
        if (perm_min_index) o << "permutation.min_index = " << perm_min_index << "\n";
    }

    o << "lil.statistic = " << to_string(statistic) << "\n";
    o << "lil.N_max = " << n_max << "\n";
    o << "lil.checkpoint_ratio = " << fmt_double(checkpoint_ratio) << "\n";
    o << "lil.N_min = " << n_min << "\n";
    o << "lil.samples = " << samples << "\n";
    o << "lil.seed = " << seed << "\n";
    o << "lil.precision_guard = " << precision_guard << "\n";
    if (precision_bits) o << "lil.precision_bits = " << precision_bits << "\n";

    o << "prediction.kind = " << to_string(pred_kind) << "\n";
    if (pred_kind == PredictionKind::constant)
        o << "prediction.value = " << fmt_double(pred_value) << "\n";
    if (pred_kind == PredictionKind::sigma_identity) {
        o << "prediction.theta = " << pred_theta << "\n";
        o << "prediction.K = " << pred_k << "\n";
    }
    if (pred_kind == PredictionKind::cos_formula)
        o << "prediction.c = " << pred_c << "\n";
    return o.str();
}

std::string ExperimentConfig::hash_hex() const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : serialize()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// parsing
// ---------------------------------------------------------------------------

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<mpq_class> parse_rationals(const std::string& s, const std::string& key) {
    std::vector<mpq_class> out;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        tok = trim(tok);
        try {
            mpq_class q(tok);
            if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
            q.canonicalize();
            out.push_back(std::move(q));
        } catch (...) {
            throw config_error(key + ": cannot parse rational '" + tok + "'");
        }
    }
    if (out.empty()) throw config_error(key + ": empty list");
    return out;
}

std::uint64_t parse_u64(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw config_error(key + ": expected nonnegative integer, got '" + s + "'");
    }
}

long parse_long(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const long v = std::stol(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw config_error(key + ": expected integer, got '" + s + "'");
    }
}

double parse_double(const std::string& s, const std::string& key) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("");
        return v;
    } catch (...) {
        throw config_error(key + ": expected number, got '" + s + "'");
    }
}

void apply_kv(ExperimentConfig& c, const std::string& key, const std::string& val) {
    if (key == "sequence.kind") {
        if (val == "power") c.seq_kind = SequenceKind::power;
        else if (val == "power_minus_one") c.seq_kind = SequenceKind::power_minus_one;
        else if (val == "superlacunary") c.seq_kind = SequenceKind::superlacunary;
        else if (val == "custom") c.seq_kind = SequenceKind::custom;
        else throw config_error("sequence.kind: unknown value '" + val + "'");
    } else if (key == "sequence.base") {
        c.seq_base = parse_u64(val, key);
        if (c.seq_base < 2) throw config_error("sequence.base must be >= 2");
    } else if (key == "sequence.N") {
        c.seq_length = parse_u64(val, key);
    } else if (key == "sequence.path") {
        c.seq_path = val;
    } else if (key == "function.kind") {
        if (val == "cos_poly") c.fn_kind = FunctionKind::cos_poly;
        else if (val == "indicator") c.fn_kind = FunctionKind::indicator;
        else throw config_error("function.kind: unknown value '" + val + "'");
    } else if (key == "function.params") {
        auto list = parse_rationals(val, key);
        if (c.fn_kind == FunctionKind::indicator) {
            if (list.size() != 2) throw config_error("function.params: indicator needs 'a,b'");
            c.fn_lo = list[0];
            c.fn_hi = list[1];
        } else {
            c.fn_cos = std::move(list);
        }
    } else if (key == "function.sin") {
        c.fn_sin = parse_rationals(val, key);
    } else if (key == "permutation.kind") {
        if (val == "identity") c.perm_kind = ConfigPermKind::identity;
        else if (val == "shuffle") c.perm_kind = ConfigPermKind::shuffle;
        else if (val == "block_sorted") c.perm_kind = ConfigPermKind::block_sorted;
        else if (val == "pair_interleave") c.perm_kind = ConfigPermKind::pair_interleave;
        else throw config_error("permutation.kind: unknown value '" + val + "'");
    } else if (key == "permutation.theta") {
        c.perm_theta = parse_double(val, key);
        if (!(c.perm_theta > 1.0)) throw config_error("permutation.theta must be > 1");
    } else if (key == "permutation.query.a") {
        c.query_a = parse_long(val, key);
    } else if (key == "permutation.query.b") {
        c.query_b = parse_long(val, key);
    } else if (key == "permutation.query.c") {
        try {
            c.query_c = mpz_class(val);
        } catch (...) {
            throw config_error("permutation.query.c: expected integer");
        }
    } else if (key == "permutation.growth") {
        if (val == "packed") c.perm_growth = PairGrowth::packed;
        else if (val == "divergent") c.perm_growth = PairGrowth::divergent;
        else throw config_error("permutation.growth: unknown value '" + val + "'");
    } else if (key == "permutation.min_index") {
        c.perm_min_index = parse_u64(val, key);
    } else if (key == "lil.statistic") {
        if (val == "sums") c.statistic = StatisticKind::sums;
        else if (val == "discrepancy") c.statistic = StatisticKind::discrepancy;
        else throw config_error("lil.statistic: unknown value '" + val + "'");
    } else if (key == "lil.N_max") {
        c.n_max = parse_u64(val, key);
        if (c.n_max < 1) throw config_error("lil.N_max must be >= 1");
    } else if (key == "lil.checkpoint_ratio") {
        c.checkpoint_ratio = parse_double(val, key);
        if (!(c.checkpoint_ratio > 1.0)) throw config_error("lil.checkpoint_ratio must be > 1");
    } else if (key == "lil.N_min") {
        c.n_min = parse_u64(val, key);
    } else if (key == "lil.samples") {
        c.samples = parse_u64(val, key);
        if (c.samples < 1) throw config_error("lil.samples must be >= 1");
    } else if (key == "lil.seed") {
        c.seed = parse_u64(val, key);
    } else if (key == "lil.precision_guard") {
        c.precision_guard = parse_long(val, key);
        if (c.precision_guard < 0) throw config_error("lil.precision_guard must be >= 0");
    } else if (key == "lil.precision_bits") {
        c.precision_bits = parse_long(val, key);
        if (c.precision_bits < 0) throw config_error("lil.precision_bits must be >= 0");
    } else if (key == "prediction.kind") {
        if (val == "none") c.pred_kind = PredictionKind::none;
        else if (val == "constant") c.pred_kind = PredictionKind::constant;
        else if (val == "norm") c.pred_kind = PredictionKind::norm;
        else if (val == "sigma_identity") c.pred_kind = PredictionKind::sigma_identity;
        else if (val == "cos_formula") c.pred_kind = PredictionKind::cos_formula;
        else throw config_error("prediction.kind: unknown value '" + val + "'");
    } else if (key == "prediction.value") {
        c.pred_value = parse_double(val, key);
    } else if (key == "prediction.theta") {
        c.pred_theta = parse_u64(val, key);
    } else if (key == "prediction.K") {
        c.pred_k = static_cast<unsigned>(parse_u64(val, key));
    } else if (key == "prediction.c") {
        c.pred_c = parse_long(val, key);
    } else {
        throw config_error("unknown configuration key '" + key + "'");
    }
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    // two passes so that function.kind may appear after function.params
    std::vector<std::pair<std::string, std::string>> kvs;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(lineno) + ": expected key = value");
        kvs.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    std::stable_sort(kvs.begin(), kvs.end(), [](const auto& x, const auto& y) {
        auto rank = [](const std::string& k) { return k.ends_with(".kind") ? 0 : 1; };
        return rank(x.first) < rank(y.first);
    });
    for (const auto& [k, v] : kvs) apply_kv(cfg, k, v);
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_overrides(ExperimentConfig& cfg, const std::vector<std::string>& overrides) {
    for (const auto& ov : overrides) {
        auto eq = ov.find('=');
        if (eq == std::string::npos)
            throw config_error("override must be key=value: '" + ov + "'");
        apply_kv(cfg, trim(ov.substr(0, eq)), trim(ov.substr(eq + 1)));
    }
}

}  // namespace lacuna
