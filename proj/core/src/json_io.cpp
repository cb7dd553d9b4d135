#include "suspension/json_io.hpp"

#include "suspension/errors.hpp"

#include <limits>
#include <ostream>

namespace suspension {

namespace {

nlohmann::json level_to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() &&
        v <= std::numeric_limits<std::int64_t>::max()) {
        return v.convert_to<std::int64_t>();
    }
    return v.str();
}

BigInt level_from_json(const nlohmann::json& j) {
    if (j.is_number_integer()) return BigInt(j.get<std::int64_t>());
    if (j.is_string()) return BigInt(j.get<std::string>());
    throw ParseError("level must be an integer or a decimal string");
}

}  // namespace

GrowthConfig growth_config_from_json(const nlohmann::json& j) {
    GrowthConfig cfg;
    if (j.contains("m")) cfg.m = j.at("m").get<std::vector<int>>();
    if (j.contains("repeat_last")) cfg.repeat_last = j.at("repeat_last").get<bool>();
    if (j.contains("cap_depth")) cfg.cap_depth = j.at("cap_depth").get<int>();
    if (j.contains("truncation_k")) cfg.truncation_k = j.at("truncation_k").get<int>();
    return cfg;
}

nlohmann::json growth_config_to_json(const GrowthConfig& cfg) {
    return nlohmann::json{{"m", cfg.m},
                          {"repeat_last", cfg.repeat_last},
                          {"cap_depth", cfg.cap_depth},
                          {"truncation_k", cfg.truncation_k}};
}

nlohmann::json region_to_json(const RegionSet& region) {
    nlohmann::json parts = nlohmann::json::array();
    for (const Rectangle& r : region.parts()) {
        nlohmann::json column;
        int k = r.column.class_index();
        if (k >= 0) {
            column = nlohmann::json{{"class", k}};
        } else {
            column = nlohmann::json{{"prefix", r.column.bit_string()}};
        }
        parts.push_back(nlohmann::json{{"column", std::move(column)},
                                       {"levels", {level_to_json(r.lo), level_to_json(r.hi)}},
                                       {"mass", r.measure().str()}});
    }
    return nlohmann::json{{"parts", std::move(parts)},
                          {"mass", region.mass().str()},
                          {"tail_bound", region.tail_bound().str()}};
}

RegionSet region_from_json(const nlohmann::json& j, const GrowthSpec& spec) {
    const nlohmann::json& parts = j.contains("parts") ? j.at("parts") : j;
    if (!parts.is_array()) throw ParseError("region JSON must contain a parts array");
    std::vector<Rectangle> rects;
    rects.reserve(parts.size());
    for (const nlohmann::json& p : parts) {
        const nlohmann::json& column = p.at("column");
        Column col;
        if (column.contains("class")) {
            col = Column::column_class(column.at("class").get<int>());
        } else {
            col = Column::prefix(column.at("prefix").get<std::string>());
        }
        const nlohmann::json& levels = p.at("levels");
        rects.push_back(make_rectangle(std::move(col), level_from_json(levels.at(0)),
                                       level_from_json(levels.at(1)), spec));
    }
    Dyadic tail;
    if (j.contains("tail_bound")) tail = Dyadic::parse(j.at("tail_bound").get<std::string>());
    return RegionSet::from_parts(std::move(rects), std::move(tail));
}

namespace {

void write_header(std::ostream& out, const RegionSet& support, const std::string& trace,
                  const Dyadic& tail, std::size_t atom_count) {
    nlohmann::json header{{"type", "configuration"},
                          {"seed_trace", trace},
                          {"atoms", atom_count},
                          {"excluded_tail", tail.str()},
                          {"support", region_to_json(support)}};
    out << header.dump() << '\n';
}

nlohmann::json atom_json(const TowerPoint& p) {
    return nlohmann::json{{"type", "atom"},
                          {"prefix", p.word.revealed_bits()},
                          {"level", p.level.str()}};
}

}  // namespace

void write_configuration(std::ostream& out, const CountingMeasure& nu) {
    write_header(out, nu.support, nu.seed_trace, nu.excluded_tail, nu.atoms.size());
    for (const TowerPoint& p : nu.atoms) out << atom_json(p).dump() << '\n';
}

void write_configuration(std::ostream& out, const MarkedCountingMeasure& nu) {
    write_header(out, nu.support, nu.seed_trace, nu.excluded_tail, nu.atoms.size());
    for (const MarkedAtom& a : nu.atoms) {
        nlohmann::json j = atom_json(a.point);
        j["mark"] = a.mark;
        out << j.dump() << '\n';
    }
}

}  // namespace suspension
