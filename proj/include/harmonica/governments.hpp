#pragma once

#include <optional>
#include <utility>

#include "harmonica/solver.hpp"

namespace harmonica {

class GovernmentError : public std::runtime_error {
public:
    enum class Kind { TooSmall };
    GovernmentError(Kind kind, std::string message)
        : std::runtime_error(std::move(message)), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

// A dictatorship (two or more colorings agreeing at one endpoint) or a
// democracy (exactly two colorings with the colors swapped across the edge).
struct Government {
    enum class Kind { Dictatorship, Democracy };

    Kind kind;
    PathRef path;
    std::set<std::pair<Color, Color>> members;

    // Dictatorship fields.
    int dictator_index = -1; // 0 or 1 into path
    Color dictator_color = -1;
    ColorSet satellite_colors;
    bool also_democracy = false; // cannot occur for proper members; kept for the record

    // Democracy field.
    std::pair<Color, Color> democracy_colors{-1, -1}; // sorted

    VertexId dictator() const { return path[dictator_index]; }
    ColorSet colors_at(int index) const {
        ColorSet out;
        for (const auto& m : members) out.insert(index == 0 ? m.first : m.second);
        return out;
    }
};

// Two governments whose union is not itself a government.
struct Confederacy {
    Government first;
    Government second;

    std::set<std::pair<Color, Color>> union_members() const {
        auto out = first.members;
        out.insert(second.members.begin(), second.members.end());
        return out;
    }
};

struct Classification {
    enum class Kind { Dictatorship, Democracy, Neither };
    Kind kind;
    std::optional<Government> witness;
};

// Exact classification of the whole set (at least two members required).
// The dictatorship pattern is tested first.
Classification classify(const EdgeColoringSet& c);

// Whether the whole member set forms a government.
bool is_government(const PathRef& path, const std::set<std::pair<Color, Color>>& members);

// Some subset of C forming a government, maximal dictatorships preferred,
// or NONE when no two members agree anywhere and no swapped pair exists.
std::optional<Government> find_government(const EdgeColoringSet& c);

// Two governments inside C whose union is not a government, or NONE.  The
// search runs over maximal agreement classes and swapped pairs, which is
// exhaustive: enlarging a government never creates an endpoint agreement.
std::optional<Confederacy> find_confederacy(const EdgeColoringSet& c);

} // namespace harmonica
