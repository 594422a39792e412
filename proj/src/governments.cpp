#include "harmonica/governments.hpp"

#include <algorithm>

namespace harmonica {

namespace {

bool democracy_pattern(const std::set<std::pair<Color, Color>>& members) {
    if (members.size() != 2) return false;
    auto it = members.begin();
    auto [a1, b1] = *it++;
    auto [a2, b2] = *it;
    return a1 == b2 && a2 == b1 && a1 != b1;
}

std::optional<int> common_endpoint(const std::set<std::pair<Color, Color>>& members, int index) {
    std::optional<Color> common;
    for (const auto& m : members) {
        Color c = index == 0 ? m.first : m.second;
        if (!common) common = c;
        else if (*common != c) return std::nullopt;
    }
    return common ? std::optional<int>(*common) : std::nullopt;
}

Government make_dictatorship(const PathRef& path,
                             const std::set<std::pair<Color, Color>>& members, int index,
                             Color color) {
    Government g;
    g.kind = Government::Kind::Dictatorship;
    g.path = path;
    g.members = members;
    g.dictator_index = index;
    g.dictator_color = color;
    g.satellite_colors = g.colors_at(1 - index);
    g.also_democracy = democracy_pattern(members);
    return g;
}

Government make_democracy(const PathRef& path, Color a, Color b) {
    Government g;
    g.kind = Government::Kind::Democracy;
    g.path = path;
    g.members = {{a, b}, {b, a}};
    g.democracy_colors = a < b ? std::pair<Color, Color>{a, b} : std::pair<Color, Color>{b, a};
    return g;
}

} // namespace

bool is_government(const PathRef&, const std::set<std::pair<Color, Color>>& members) {
    if (members.size() < 2) return false;
    if (common_endpoint(members, 0) || common_endpoint(members, 1)) return true;
    return democracy_pattern(members);
}

Classification classify(const EdgeColoringSet& c) {
    if (c.members.size() < 2)
        throw GovernmentError(GovernmentError::Kind::TooSmall,
                              "classification needs at least two colorings");
    for (int index : {0, 1}) {
        if (auto color = common_endpoint(c.members, index))
            return {Classification::Kind::Dictatorship,
                    make_dictatorship(c.path, c.members, index, *color)};
    }
    if (democracy_pattern(c.members)) {
        auto [a, b] = *c.members.begin();
        return {Classification::Kind::Democracy, make_democracy(c.path, a, b)};
    }
    return {Classification::Kind::Neither, std::nullopt};
}

namespace {

// All maximal dictatorship classes plus all swapped pairs inside C, in a
// deterministic order.
std::vector<Government> candidate_governments(const EdgeColoringSet& c) {
    std::vector<Government> out;
    for (int index : {0, 1}) {
        std::map<Color, std::set<std::pair<Color, Color>>> classes;
        for (const auto& m : c.members) classes[index == 0 ? m.first : m.second].insert(m);
        for (const auto& [color, members] : classes)
            if (members.size() >= 2) out.push_back(make_dictatorship(c.path, members, index, color));
    }
    for (const auto& m : c.members) {
        if (m.first < m.second && c.members.count({m.second, m.first}))
            out.push_back(make_democracy(c.path, m.first, m.second));
    }
    return out;
}

} // namespace

std::optional<Government> find_government(const EdgeColoringSet& c) {
    auto candidates = candidate_governments(c);
    if (candidates.empty()) return std::nullopt;
    // Largest dictatorship first, endpoint 0 before 1, then smallest color.
    auto best = candidates.end();
    for (auto it = candidates.begin(); it != candidates.end(); ++it) {
        if (it->kind != Government::Kind::Dictatorship) continue;
        if (best == candidates.end() || it->members.size() > best->members.size() ||
            (it->members.size() == best->members.size() &&
             std::pair{it->dictator_index, it->dictator_color} <
                 std::pair{best->dictator_index, best->dictator_color}))
            best = it;
    }
    if (best != candidates.end()) return *best;
    for (const auto& g : candidates)
        if (g.kind == Government::Kind::Democracy) return g;
    return std::nullopt;
}

std::optional<Confederacy> find_confederacy(const EdgeColoringSet& c) {
    auto candidates = candidate_governments(c);
    for (std::size_t i = 0; i < candidates.size(); ++i)
        for (std::size_t j = i + 1; j < candidates.size(); ++j) {
            auto u = candidates[i].members;
            u.insert(candidates[j].members.begin(), candidates[j].members.end());
            if (!is_government(c.path, u)) return Confederacy{candidates[i], candidates[j]};
        }
    return std::nullopt;
}

} // namespace harmonica
