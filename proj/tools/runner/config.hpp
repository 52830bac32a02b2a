#pragma once

#include <qrabi/model.hpp>

#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace qrabi::cli {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string field, const std::string& what, int line = 0);
    const std::string& field() const noexcept { return field_; }
    int line() const noexcept { return line_; }

private:
    std::string field_;
    int line_;
};

enum class Experiment { Spectrum, GhzFidelity, NegativityMap, Quench, Adiabatic, SplittingScaling };

const char* to_string(Experiment e);
Experiment experiment_from_string(const std::string& s);
const std::vector<Experiment>& all_experiments();

enum class ValueType { Int, Double, String, DoubleList };

struct KeySpec {
    const char* section;        // "" for root keys
    const char* key;
    ValueType type;
    const char* fallback;       // nullptr = required
    std::vector<Experiment> experiments;   // empty = every experiment
    std::vector<const char*> choices;      // allowed values for strings
};

const std::vector<KeySpec>& schema();

// Resolved configuration. Every key that applies to the chosen experiment is
// present, in canonical form.
class Config {
public:
    static Config parse(std::istream& in, const std::vector<std::string>& overrides = {});
    static Config load(const std::string& path, const std::vector<std::string>& overrides = {});

    Experiment experiment() const { return experiment_; }

    bool has(const std::string& dotted) const { return values_.count(dotted) != 0; }
    const std::string& raw(const std::string& dotted) const;
    int get_int(const std::string& dotted) const;
    double get_double(const std::string& dotted) const;
    const std::string& get_string(const std::string& dotted) const;
    std::vector<double> get_list(const std::string& dotted) const;

    // n_max is "auto" unless given explicitly.
    std::optional<int> fixed_n_max() const;
    ModelParams model() const;

    // INI text in schema order.
    std::string serialize() const;
    // section -> key -> canonical value
    std::map<std::string, std::map<std::string, std::string>> sections() const;

private:
    Experiment experiment_ = Experiment::Spectrum;
    std::map<std::string, std::string> values_;
};

std::string format_double(double v);

}  // namespace qrabi::cli
