#include "config.hpp"

#include <qrabi/errors.hpp>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qrabi::cli {

namespace {

using E = Experiment;

std::string compose(const std::string& field, const std::string& what, int line) {
    std::string msg = line > 0 ? "line " + std::to_string(line) + ": " : std::string{};
    if (!field.empty()) msg += field + ": ";
    return msg + what;
}

std::string dotted(const KeySpec& k) {
    return *k.section ? std::string(k.section) + "." + k.key : std::string(k.key);
}

bool applies(const KeySpec& k, Experiment e) {
    return k.experiments.empty() || std::find(k.experiments.begin(), k.experiments.end(), e) != k.experiments.end();
}

std::string trim(std::string s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

std::optional<double> to_double(const std::string& s) {
    double v = 0.0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::optional<long long> to_int(const std::string& s) {
    long long v = 0;
    const auto* end = s.data() + s.size();
    auto [p, ec] = std::from_chars(s.data(), end, v);
    if (ec != std::errc{} || p != end) return std::nullopt;
    return v;
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(trim(item));
    return out;
}

// Line of `key` inside `section` in the original text, 0 if not found.
int locate(const std::string& text, const std::string& section, const std::string& key) {
    std::istringstream in(text);
    std::string line, current;
    int no = 0;
    while (std::getline(in, line)) {
        ++no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == ';' || t[0] == '#') continue;
        if (t.front() == '[' && t.back() == ']') {
            current = trim(t.substr(1, t.size() - 2));
            if (key.empty() && current == section) return no;
            continue;
        }
        const auto eq = t.find('=');
        if (eq != std::string::npos && current == section && trim(t.substr(0, eq)) == key) return no;
    }
    return 0;
}

std::string canonical(const KeySpec& k, const std::string& raw) {
    const std::string field = dotted(k);
    const std::string v = trim(raw);
    switch (k.type) {
    case ValueType::Int: {
        const auto i = to_int(v);
        if (!i) throw ConfigError(field, "expected an integer, got '" + v + "'");
        return std::to_string(*i);
    }
    case ValueType::Double: {
        const auto d = to_double(v);
        if (!d) throw ConfigError(field, "expected a number, got '" + v + "'");
        return format_double(*d);
    }
    case ValueType::DoubleList: {
        std::string out;
        for (const auto& item : split_list(v)) {
            const auto d = to_double(item);
            if (!d) throw ConfigError(field, "expected a comma-separated list of numbers, got '" + v + "'");
            if (!out.empty()) out += ", ";
            out += format_double(*d);
        }
        if (out.empty()) throw ConfigError(field, "list is empty");
        return out;
    }
    case ValueType::String:
        if (!k.choices.empty() &&
            std::none_of(k.choices.begin(), k.choices.end(), [&](const char* c) { return v == c; })) {
            std::string allowed;
            for (const char* c : k.choices) allowed += std::string(allowed.empty() ? "" : ", ") + c;
            throw ConfigError(field, "'" + v + "' is not one of {" + allowed + "}");
        }
        return v;
    }
    return v;
}

const std::set<std::string>& section_names() {
    static const std::set<std::string> names = [] {
        std::set<std::string> s;
        for (const auto& k : schema())
            if (*k.section) s.insert(k.section);
        return s;
    }();
    return names;
}

const KeySpec* find_key(const std::string& section, const std::string& key) {
    for (const auto& k : schema())
        if (section == k.section && key == k.key) return &k;
    return nullptr;
}

}  // namespace

ConfigError::ConfigError(std::string field, const std::string& what, int line)
    : std::runtime_error(compose(field, what, line)), field_(std::move(field)), line_(line) {}

const char* to_string(Experiment e) {
    switch (e) {
    case E::Spectrum: return "spectrum";
    case E::GhzFidelity: return "ghz-fidelity";
    case E::NegativityMap: return "negativity-map";
    case E::Quench: return "quench";
    case E::Adiabatic: return "adiabatic";
    case E::SplittingScaling: return "splitting-scaling";
    }
    return "?";
}

const std::vector<Experiment>& all_experiments() {
    static const std::vector<Experiment> all{E::Spectrum, E::GhzFidelity, E::NegativityMap,
                                             E::Quench, E::Adiabatic, E::SplittingScaling};
    return all;
}

Experiment experiment_from_string(const std::string& s) {
    for (auto e : all_experiments())
        if (s == to_string(e)) return e;
    throw ConfigError("experiment", "unknown experiment '" + s + "'");
}

const std::vector<KeySpec>& schema() {
    using V = ValueType;
    static const std::vector<KeySpec> table{
        {"", "experiment", V::String, nullptr, {},
         {"spectrum", "ghz-fidelity", "negativity-map", "quench", "adiabatic", "splitting-scaling"}},
        {"", "seed", V::Int, "0", {}, {}},
        {"", "output", V::String, "", {}, {}},

        {"model", "d", V::Int, nullptr, {}, {}},
        {"model", "omega", V::Double, "1", {}, {}},
        {"model", "Omega1", V::Double, "0", {}, {}},
        {"model", "Omega2", V::Double, "0", {}, {}},
        {"model", "g1", V::Double, "0", {}, {}},
        {"model", "g2", V::Double, "0", {}, {}},
        {"model", "n_max", V::String, "auto", {}, {}},
        {"model", "qudit", V::String, "spin", {}, {"spin", "ladder"}},

        {"spectrum", "g_min", V::Double, "0", {E::Spectrum}, {}},
        {"spectrum", "g_max", V::Double, "0.5", {E::Spectrum}, {}},
        {"spectrum", "points", V::Int, "101", {E::Spectrum}, {}},
        {"spectrum", "levels", V::Int, "10", {E::Spectrum}, {}},
        {"spectrum", "ququart_variant", V::String, "as-printed", {E::Spectrum}, {"as-printed", "half"}},

        {"ghz", "g_min", V::Double, "0", {E::GhzFidelity}, {}},
        {"ghz", "g_max", V::Double, "1", {E::GhzFidelity}, {}},
        {"ghz", "points", V::Int, "41", {E::GhzFidelity}, {}},

        {"negativity", "g1_min", V::Double, "0", {E::NegativityMap}, {}},
        {"negativity", "g1_max", V::Double, "0.5", {E::NegativityMap}, {}},
        {"negativity", "g1_points", V::Int, "41", {E::NegativityMap}, {}},
        {"negativity", "g2_min", V::Double, "0", {E::NegativityMap}, {}},
        {"negativity", "g2_max", V::Double, "0.5", {E::NegativityMap}, {}},
        {"negativity", "g2_points", V::Int, "41", {E::NegativityMap}, {}},
        {"negativity", "threads", V::Int, "0", {E::NegativityMap}, {}},

        {"quench", "t_max", V::Double, "100", {E::Quench}, {}},
        {"quench", "samples", V::Int, "8192", {E::Quench}, {}},
        {"quench", "n_sum", V::Int, "10", {E::Quench}, {}},
        {"quench", "weights", V::String, "overlap", {E::Quench}, {"overlap", "uniform"}},

        {"adiabatic", "scheme", V::String, "I", {E::Adiabatic}, {"I", "II"}},
        {"adiabatic", "t_f", V::Double, "500", {E::Adiabatic}, {}},
        {"adiabatic", "steps", V::Int, "5000", {E::Adiabatic}, {}},
        {"adiabatic", "Omega1_start", V::Double, "2", {E::Adiabatic}, {}},
        {"adiabatic", "Omega2_start", V::Double, "2", {E::Adiabatic}, {}},
        {"adiabatic", "record_every", V::Int, "10", {E::Adiabatic}, {}},

        {"splitting", "Omega2_values", V::DoubleList, "0.005, 0.01, 0.02, 0.04", {E::SplittingScaling}, {}},
    };
    return table;
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw std::logic_error("format_double");
    return {buf, p};
}

Config Config::load(const std::string& path, const std::vector<std::string>& overrides) {
    std::ifstream in(path);
    if (!in) throw ConfigError("", "cannot open config file '" + path + "'");
    return parse(in, overrides);
}

Config Config::parse(std::istream& in, const std::vector<std::string>& overrides) {
    namespace pt = boost::property_tree;
    const std::string text{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};

    pt::ptree tree;
    try {
        std::istringstream ss(text);
        pt::read_ini(ss, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("", e.message(), static_cast<int>(e.line()));
    }

    std::map<std::string, std::string> raw;
    for (const auto& [name, node] : tree) {
        if (section_names().count(name)) {
            for (const auto& [key, leaf] : node) {
                if (!find_key(name, key))
                    throw ConfigError(name + "." + key, "unknown key", locate(text, name, key));
                raw[name + "." + key] = leaf.data();
            }
        } else if (node.empty() && find_key("", name)) {
            raw[name] = node.data();
        } else {
            const bool is_section = !node.empty() || node.data().empty();
            throw ConfigError(name, is_section ? "unknown section" : "unknown key",
                              locate(text, is_section ? name : "", is_section ? "" : name));
        }
    }

    std::set<std::string> overridden;
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw ConfigError(o, "override must have the form key=value");
        const std::string lhs = trim(o.substr(0, eq));
        const auto dot = lhs.find('.');
        const std::string section = dot == std::string::npos ? "" : lhs.substr(0, dot);
        const std::string key = dot == std::string::npos ? lhs : lhs.substr(dot + 1);
        if (!find_key(section, key)) throw ConfigError(lhs, "unknown key in override");
        raw[lhs] = trim(o.substr(eq + 1));
        overridden.insert(lhs);
    }

    Config c;
    const auto exp_it = raw.find("experiment");
    if (exp_it == raw.end()) throw ConfigError("experiment", "missing required field");
    c.experiment_ = experiment_from_string(trim(exp_it->second));

    for (const auto& k : schema()) {
        const std::string name = dotted(k);
        const auto it = raw.find(name);
        if (!applies(k, c.experiment_)) {
            if (it != raw.end())
                throw ConfigError(name, std::string("not used by experiment '") + to_string(c.experiment_) + "'",
                                  locate(text, k.section, k.key));
            continue;
        }
        if (it == raw.end()) {
            if (!k.fallback) throw ConfigError(name, "missing required field");
            c.values_[name] = k.fallback;
            continue;
        }
        try {
            c.values_[name] = canonical(k, it->second);
        } catch (const ConfigError& e) {
            throw ConfigError(name, std::string(e.what()).substr(name.size() + 2),
                              overridden.count(name) ? 0 : locate(text, k.section, k.key));
        }
    }

    if (c.values_["output"].empty()) {
        std::string stem = to_string(c.experiment_);
        std::replace(stem.begin(), stem.end(), '-', '_');
        c.values_["output"] = stem;
    }
    if (c.values_["output"].find('/') != std::string::npos)
        throw ConfigError("output", "must be a file stem, not a path (use --out for the directory)");

    const std::string& n = c.values_["model.n_max"];
    if (n != "auto") {
        const auto v = to_int(n);
        if (!v || *v < 1) throw ConfigError("model.n_max", "expected 'auto' or a positive integer, got '" + n + "'");
        c.values_["model.n_max"] = std::to_string(*v);
    }

    try {
        c.model().validate();
    } catch (const qrabi::InvalidParams& e) {
        throw ConfigError("model", e.what());
    }

    auto positive = [&](const char* field, int minimum) {
        if (c.has(field) && c.get_int(field) < minimum)
            throw ConfigError(field, "must be at least " + std::to_string(minimum));
    };
    positive("spectrum.points", 2);
    positive("spectrum.levels", 1);
    positive("ghz.points", 2);
    positive("negativity.g1_points", 1);
    positive("negativity.g2_points", 1);
    positive("quench.samples", 64);
    positive("quench.n_sum", 0);
    positive("adiabatic.steps", 1);
    positive("adiabatic.record_every", 1);
    return c;
}

const std::string& Config::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw ConfigError(key, "not present in resolved config");
    return it->second;
}

int Config::get_int(const std::string& key) const { return static_cast<int>(*to_int(raw(key))); }
double Config::get_double(const std::string& key) const { return *to_double(raw(key)); }
const std::string& Config::get_string(const std::string& key) const { return raw(key); }

std::vector<double> Config::get_list(const std::string& key) const {
    std::vector<double> out;
    for (const auto& item : split_list(raw(key))) out.push_back(*to_double(item));
    return out;
}

std::optional<int> Config::fixed_n_max() const {
    const auto& n = raw("model.n_max");
    if (n == "auto") return std::nullopt;
    return static_cast<int>(*to_int(n));
}

ModelParams Config::model() const {
    ModelParams p;
    p.d = get_int("model.d");
    p.omega = get_double("model.omega");
    p.Omega1 = get_double("model.Omega1");
    p.Omega2 = get_double("model.Omega2");
    p.g1 = get_double("model.g1");
    p.g2 = get_double("model.g2");
    p.qudit = qudit_operators_from_string(get_string("model.qudit"));
    const auto n = fixed_n_max();
    p.n_max = n ? *n : 1;
    if (!n) {
        p.validate();
        p = p.with_adequate_truncation();
    }
    return p;
}

std::map<std::string, std::map<std::string, std::string>> Config::sections() const {
    std::map<std::string, std::map<std::string, std::string>> out;
    for (const auto& k : schema()) {
        const auto it = values_.find(dotted(k));
        if (it != values_.end()) out[k.section][k.key] = it->second;
    }
    return out;
}

std::string Config::serialize() const {
    std::ostringstream out;
    std::string current;
    for (const auto& k : schema()) {
        const auto it = values_.find(dotted(k));
        if (it == values_.end()) continue;
        if (current != k.section) {
            current = k.section;
            out << "\n[" << current << "]\n";
        }
        out << k.key << " = " << it->second << '\n';
    }
    return out.str();
}

}  // namespace qrabi::cli
