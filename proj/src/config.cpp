#include "memsim/config.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <charconv>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace memsim {

using nlohmann::json;

namespace {

struct TimingField {
    const char* name;
    Cycle TimingParams::*member;
};

constexpr TimingField kTimingFields[] = {
    {"tRP", &TimingParams::tRP},
    {"tFAW", &TimingParams::tFAW},
    {"tRRDL", &TimingParams::tRRDL},
    {"tRCDRD", &TimingParams::tRCDRD},
    {"tRCDWR", &TimingParams::tRCDWR},
    {"tCCDL", &TimingParams::tCCDL},
    {"tWTR", &TimingParams::tWTR},
    {"tRFC", &TimingParams::tRFC},
    {"tREFI", &TimingParams::tREFI},
    {"tCL", &TimingParams::tCL},
    {"tSREFEnter", &TimingParams::tSREFEnter},
    {"tSREFExit", &TimingParams::tSREFExit},
    {"selfRefreshIdleThreshold", &TimingParams::selfRefreshIdleThreshold},
};

struct TopologyField {
    const char* name;
    std::uint32_t Topology::*member;
};

constexpr TopologyField kTopologyFields[] = {
    {"numRanks", &Topology::numRanks},
    {"numBankGroups", &Topology::numBankGroups},
    {"numBanks", &Topology::numBanks},
    {"rowBits", &Topology::rowBits},
    {"colBits", &Topology::colBits},
    {"addressBits", &Topology::addressBits},
};

// Top-level scalars. Cycle-valued ones are stored as int64, the rest as uint32.
enum class ScalarKind { U32, CycleValue };
struct TopField {
    const char* name;
    ScalarKind kind;
    std::uint32_t SimConfig::*u32;
    Cycle SimConfig::*cycles;
};

constexpr TopField kTopFields[] = {
    {"queueSize", ScalarKind::U32, &SimConfig::queueSize, nullptr},
    {"schedulerQueueDepth", ScalarKind::U32, &SimConfig::schedulerQueueDepth, nullptr},
    {"maxCycles", ScalarKind::CycleValue, nullptr, &SimConfig::maxCycles},
    {"statsWindow", ScalarKind::CycleValue, nullptr, &SimConfig::statsWindow},
};

std::uint32_t log2_exact(std::uint32_t v) { return v == 0 ? 0 : std::bit_width(v) - 1; }

std::int64_t as_integer(const json& value, const std::string& key) {
    if (!value.is_number_integer()) {
        throw ConfigError("key '" + key + "': expected an integer, got " + value.dump());
    }
    return value.get<std::int64_t>();
}

std::uint32_t as_count(const json& value, const std::string& key) {
    const auto v = as_integer(value, key);
    if (v < 0 || v > std::numeric_limits<std::uint32_t>::max()) {
        throw ConfigError("key '" + key + "': value " + std::to_string(v) + " out of range");
    }
    return static_cast<std::uint32_t>(v);
}

void read_timing(const json& section, TimingParams& timing) {
    if (!section.is_object()) throw ConfigError("key 'timing': expected an object");
    for (const auto& [key, value] : section.items()) {
        auto it = std::find_if(std::begin(kTimingFields), std::end(kTimingFields),
                               [&](const TimingField& f) { return key == f.name; });
        if (it == std::end(kTimingFields)) throw ConfigError("unknown key 'timing." + key + "'");
        timing.*(it->member) = as_integer(value, "timing." + key);
    }
}

void read_topology(const json& section, Topology& topo) {
    if (!section.is_object()) throw ConfigError("key 'topology': expected an object");
    for (const auto& [key, value] : section.items()) {
        auto it = std::find_if(std::begin(kTopologyFields), std::end(kTopologyFields),
                               [&](const TopologyField& f) { return key == f.name; });
        if (it == std::end(kTopologyFields)) throw ConfigError("unknown key 'topology." + key + "'");
        topo.*(it->member) = as_count(value, "topology." + key);
    }
}

void set_top_scalar(SimConfig& cfg, const TopField& field, const json& value) {
    if (field.kind == ScalarKind::U32) {
        cfg.*(field.u32) = as_count(value, field.name);
    } else {
        cfg.*(field.cycles) = as_integer(value, field.name);
    }
}

std::size_t line_of_byte(std::string_view text, std::size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + byte, '\n'));
}

std::string join(const std::vector<std::string>& parts, std::string_view sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

}  // namespace

std::uint32_t Topology::rank_bits() const { return log2_exact(numRanks); }
std::uint32_t Topology::bank_group_bits() const { return log2_exact(numBankGroups); }
std::uint32_t Topology::bank_bits() const { return log2_exact(numBanks); }

std::uint32_t SimConfig::scheduler_queue_capacity() const {
    return std::min(queueSize, schedulerQueueDepth);
}

std::vector<std::string> validate(const SimConfig& cfg) {
    std::vector<std::string> out;
    const auto& t = cfg.timing;
    for (const auto& f : kTimingFields) {
        if (t.*(f.member) <= 0) out.push_back(std::string(f.name) + " > 0 violated");
    }
    if (t.tREFI <= t.tRFC) out.emplace_back("tREFI > tRFC violated");
    if (t.tFAW < t.tRRDL) out.emplace_back("tFAW >= tRRDL violated");

    const auto& topo = cfg.topology;
    bool countsOk = true;
    for (const char* name : {"numRanks", "numBankGroups", "numBanks"}) {
        auto it = std::find_if(std::begin(kTopologyFields), std::end(kTopologyFields),
                               [&](const TopologyField& f) { return std::string_view(name) == f.name; });
        const auto v = topo.*(it->member);
        if (v < 1) {
            out.push_back(std::string(name) + " >= 1 violated");
            countsOk = false;
        } else if (!std::has_single_bit(v)) {
            out.push_back(std::string(name) + " must be a power of two");
            countsOk = false;
        }
    }
    if (topo.addressBits < 1 || topo.addressBits > 64) out.emplace_back("addressBits in [1, 64] violated");
    if (countsOk) {
        const std::uint64_t used = std::uint64_t{topo.rank_bits()} + topo.bank_group_bits() +
                                   topo.bank_bits() + topo.rowBits + topo.colBits;
        if (used > topo.addressBits) {
            out.push_back("log2(numRanks)+log2(numBankGroups)+log2(numBanks)+rowBits+colBits <= addressBits violated (" +
                          std::to_string(used) + " > " + std::to_string(topo.addressBits) + ")");
        }
    }

    if (cfg.queueSize < 1) out.emplace_back("queueSize >= 1 violated");
    if (cfg.schedulerQueueDepth < 1) out.emplace_back("schedulerQueueDepth >= 1 violated");
    if (cfg.maxCycles < 1) out.emplace_back("maxCycles >= 1 violated");
    if (cfg.statsWindow < 1) out.emplace_back("statsWindow >= 1 violated");
    return out;
}

SimConfig parse_config(std::string_view text, std::string_view sourceName) {
    SimConfig cfg;
    if (std::all_of(text.begin(), text.end(), [](unsigned char c) { return std::isspace(c); })) {
        return cfg;
    }

    json doc;
    try {
        doc = json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string(sourceName) + ":" + std::to_string(line_of_byte(text, e.byte)) +
                          ": parse error: " + e.what());
    }
    if (!doc.is_object()) throw ConfigError(std::string(sourceName) + ": top level must be a JSON object");

    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "timing") {
                read_timing(value, cfg.timing);
                continue;
            }
            if (key == "topology") {
                read_topology(value, cfg.topology);
                continue;
            }
            auto it = std::find_if(std::begin(kTopFields), std::end(kTopFields),
                                   [&](const TopField& f) { return key == f.name; });
            if (it == std::end(kTopFields)) throw ConfigError("unknown key '" + key + "'");
            set_top_scalar(cfg, *it, value);
        }
    } catch (const ConfigError& e) {
        throw ConfigError(std::string(sourceName) + ": " + e.what());
    }

    if (auto violations = validate(cfg); !violations.empty()) {
        throw ConfigValidationError(std::string(sourceName) + ": validation failed: " + join(violations, "; "));
    }
    return cfg;
}

SimConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str(), path.string());
}

std::string serialize_config(const SimConfig& cfg) {
    json timing = json::object();
    for (const auto& f : kTimingFields) timing[f.name] = cfg.timing.*(f.member);
    json topology = json::object();
    for (const auto& f : kTopologyFields) topology[f.name] = cfg.topology.*(f.member);

    json doc = json::object();
    doc["timing"] = std::move(timing);
    doc["topology"] = std::move(topology);
    for (const auto& f : kTopFields) {
        if (f.kind == ScalarKind::U32) {
            doc[f.name] = cfg.*(f.u32);
        } else {
            doc[f.name] = cfg.*(f.cycles);
        }
    }
    return doc.dump(2) + "\n";
}

void save_config(const SimConfig& cfg, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write config file " + path.string());
    out << serialize_config(cfg);
}

void apply_override(SimConfig& cfg, std::string_view assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string_view::npos) {
        throw ConfigError("override '" + std::string(assignment) + "' is not of the form key=value");
    }
    std::string key(assignment.substr(0, eq));
    const std::string_view valueText = assignment.substr(eq + 1);

    std::int64_t value = 0;
    auto [ptr, ec] = std::from_chars(valueText.data(), valueText.data() + valueText.size(), value);
    if (ec != std::errc() || ptr != valueText.data() + valueText.size()) {
        throw ConfigError("override '" + key + "': '" + std::string(valueText) + "' is not an integer");
    }

    std::string section;
    if (auto dot = key.find('.'); dot != std::string::npos) {
        section = key.substr(0, dot);
        key = key.substr(dot + 1);
    }

    if (section.empty() || section == "timing") {
        for (const auto& f : kTimingFields) {
            if (key == f.name) {
                cfg.timing.*(f.member) = value;
                return;
            }
        }
    }
    if (section.empty() || section == "topology") {
        for (const auto& f : kTopologyFields) {
            if (key == f.name) {
                cfg.topology.*(f.member) = as_count(json(value), key);
                return;
            }
        }
    }
    if (section.empty()) {
        for (const auto& f : kTopFields) {
            if (key == f.name) {
                set_top_scalar(cfg, f, json(value));
                return;
            }
        }
    }
    throw ConfigError("override: unknown key '" + std::string(assignment.substr(0, eq)) + "'");
}

}  // namespace memsim
