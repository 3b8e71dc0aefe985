#pragma once

#include "surfdef/mpoly.hpp"
#include "surfdef/rational.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace sd {

// Rule X: x = a + u, y = b + u v  (exceptional divisor u = 0, coordinate along it: v)
// Rule Y: x = a + u v, y = b + v  (exceptional divisor v = 0, coordinate along it: u)
enum class BlowupRule { X, Y };

struct BlowupStep {
    std::string parent;
    Rational cx, cy;
    BlowupRule rule;
    std::string chart;
    std::array<std::string, 2> coords;
    std::string label;

    int divisor_coord() const { return rule == BlowupRule::X ? 0 : 1; }
    int along_coord() const { return 1 - divisor_coord(); }
};

class BlowupTower {
public:
    BlowupTower() = default;
    BlowupTower(std::string name, std::array<std::string, 2> base_coords = {"y", "z"},
                std::string base_curve = "Delta", int base_curve_coord = 1);

    // Appends a step; the parent chart must already exist and labels must be unique.
    void add_step(const BlowupStep& s);

    const std::string& name() const { return name_; }
    std::size_t length() const { return steps_.size(); }
    const std::vector<BlowupStep>& steps() const { return steps_; }
    const BlowupStep& step(std::size_t i) const { return steps_.at(i); }
    // chart 0 is the base chart, chart k is created by step k-1
    std::size_t chart_count() const { return steps_.size() + 1; }
    std::size_t chart_index(const std::string& chart) const;
    const std::string& chart_name(std::size_t idx) const;
    std::array<std::string, 2> chart_coords(std::size_t idx) const;
    // chart index -> parent chart index (chart 0 has none)
    std::size_t parent_index(std::size_t idx) const { return parent_.at(idx - 1); }
    std::size_t divisor_index(const std::string& label) const;
    const std::string& base_curve() const { return base_curve_; }
    int base_curve_coord() const { return base_curve_coord_; }
    // every step blows up a point of the chart created by the previous step
    bool is_chain() const;

    // charts from the base down to idx (inclusive): steps to apply in order
    std::vector<std::size_t> step_path(std::size_t idx) const;

    std::string serialize() const;

    // chart coordinates (a, b) of chart idx -> base coordinates and d(base)/d(chart)
    template <class T>
    std::pair<std::array<T, 2>, std::array<std::array<T, 2>, 2>> to_base(std::size_t idx, const T& a, const T& b) const;
    template <class T>
    std::array<T, 2> from_base(std::size_t idx, const T& y, const T& z) const;

private:
    std::string name_;
    std::array<std::string, 2> base_coords_;
    std::string base_curve_;
    int base_curve_coord_;
    std::vector<BlowupStep> steps_;
    std::vector<std::size_t> parent_;
};

// Reads the tower description format:
//   tower <name>
//   base <coord1> <coord2> [curve <label> <coord index>]
//   step <parent chart> <cx> <cy> <X|Y> <chart> <coord1> <coord2> <divisor label>
// Blank lines and lines starting with # are ignored. Reading stops at "end".
BlowupTower parse_tower(const std::string& text);
std::vector<BlowupTower> parse_towers(const std::string& text);

class TowerDivisor {
public:
    TowerDivisor() = default;
    TowerDivisor(int base, std::map<std::string, int> mult) : base_(base), mult_(std::move(mult)) {}

    int base() const { return base_; }
    int mult(const std::string& label) const;
    void set(const std::string& label, int m) { mult_[label] = m; }
    void set_base(int m) { base_ = m; }
    const std::map<std::string, int>& exceptional() const { return mult_; }

    friend bool operator==(const TowerDivisor& a, const TowerDivisor& b);
    std::string to_string(const std::string& base_label = "Delta") const;

private:
    int base_ = 0;
    std::map<std::string, int> mult_;
};

enum class DivisorOrder { Less, Equal, Greater, Incomparable };

// D_{P, base}: D_0 = base, D_i = pullback(D_{i-1}) + E_i.
TowerDivisor standard_exceptional_divisor(const BlowupTower& tower, const TowerDivisor& base);

// Componentwise comparison over the union of labels.
DivisorOrder divisor_compare(const TowerDivisor& a, const TowerDivisor& b);
inline bool divisor_leq(const TowerDivisor& a, const TowerDivisor& b) {
    auto o = divisor_compare(a, b);
    return o == DivisorOrder::Less || o == DivisorOrder::Equal;
}

// Image of a divisor under an automorphism lift given by a label correspondence.
// The special target label equal to `base_label` sends a component to the base curve.
TowerDivisor relabel(const TowerDivisor& d, const std::map<std::string, std::string>& corr,
                     const std::string& base_label = "Delta");

// Coordinates of `from` expressed as rational functions of the coordinates of `to`.
std::array<RatFunc, 2> chart_transition(const BlowupTower& tower, const std::string& from, const std::string& to);

// ---- templates ----

template <class T>
std::pair<std::array<T, 2>, std::array<std::array<T, 2>, 2>> BlowupTower::to_base(std::size_t idx, const T& a0,
                                                                                   const T& b0) const {
    auto path = step_path(idx);
    T a = a0, b = b0;
    std::array<std::array<T, 2>, 2> J{{{T(1), T(0)}, {T(0), T(1)}}};
    for (auto it = path.rbegin(); it != path.rend(); ++it) {
        const BlowupStep& s = steps_[*it];
        std::array<std::array<T, 2>, 2> Jk;
        T na, nb;
        if (s.rule == BlowupRule::X) {
            Jk = {{{T(1), T(0)}, {b, a}}};
            na = a + T(s.cx);
            nb = a * b + T(s.cy);
        } else {
            Jk = {{{b, a}, {T(0), T(1)}}};
            na = a * b + T(s.cx);
            nb = b + T(s.cy);
        }
        std::array<std::array<T, 2>, 2> P;
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) P[i][j] = Jk[i][0] * J[0][j] + Jk[i][1] * J[1][j];
        J = P;
        a = na;
        b = nb;
    }
    return {{a, b}, J};
}

template <class T>
std::array<T, 2> BlowupTower::from_base(std::size_t idx, const T& y, const T& z) const {
    T a = y, b = z;
    for (std::size_t k : step_path(idx)) {
        const BlowupStep& s = steps_[k];
        if (s.rule == BlowupRule::X) {
            T u = a - T(s.cx);
            b = (b - T(s.cy)) / u;
            a = u;
        } else {
            T v = b - T(s.cy);
            a = (a - T(s.cx)) / v;
            b = v;
        }
    }
    return {a, b};
}

} // namespace sd
