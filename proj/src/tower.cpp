#include "surfdef/tower.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace sd {

BlowupTower::BlowupTower(std::string name, std::array<std::string, 2> base_coords, std::string base_curve,
                         int base_curve_coord)
    : name_(std::move(name)), base_coords_(std::move(base_coords)), base_curve_(std::move(base_curve)),
      base_curve_coord_(base_curve_coord) {}

void BlowupTower::add_step(const BlowupStep& s) {
    std::size_t p = chart_index(s.parent);
    for (const auto& t : steps_) {
        if (t.label == s.label) throw MathError("duplicate exceptional divisor label: " + s.label);
        if (t.chart == s.chart) throw MathError("duplicate chart id: " + s.chart);
    }
    if (s.chart == "base") throw MathError("chart id 'base' is reserved");
    steps_.push_back(s);
    parent_.push_back(p);
}

std::size_t BlowupTower::chart_index(const std::string& chart) const {
    if (chart == "base") return 0;
    for (std::size_t i = 0; i < steps_.size(); ++i)
        if (steps_[i].chart == chart) return i + 1;
    throw MathError("unknown chart id: " + chart);
}

const std::string& BlowupTower::chart_name(std::size_t idx) const {
    static const std::string base = "base";
    return idx == 0 ? base : steps_.at(idx - 1).chart;
}

std::array<std::string, 2> BlowupTower::chart_coords(std::size_t idx) const {
    return idx == 0 ? base_coords_ : steps_.at(idx - 1).coords;
}

std::size_t BlowupTower::divisor_index(const std::string& label) const {
    for (std::size_t i = 0; i < steps_.size(); ++i)
        if (steps_[i].label == label) return i;
    throw MathError("unknown exceptional divisor: " + label);
}

bool BlowupTower::is_chain() const {
    for (std::size_t i = 0; i < parent_.size(); ++i)
        if (parent_[i] != i) return false;
    return true;
}

std::vector<std::size_t> BlowupTower::step_path(std::size_t idx) const {
    std::vector<std::size_t> path;
    while (idx != 0) {
        path.push_back(idx - 1);
        idx = parent_.at(idx - 1);
    }
    std::reverse(path.begin(), path.end());
    return path;
}

std::string BlowupTower::serialize() const {
    std::ostringstream os;
    os << "tower " << name_ << "\n";
    os << "base " << base_coords_[0] << " " << base_coords_[1] << " curve " << base_curve_ << " " << base_curve_coord_
       << "\n";
    for (const auto& s : steps_)
        os << "step " << s.parent << " " << to_string(s.cx) << " " << to_string(s.cy) << " "
           << (s.rule == BlowupRule::X ? "X" : "Y") << " " << s.chart << " " << s.coords[0] << " " << s.coords[1]
           << " " << s.label << "\n";
    os << "end\n";
    return os.str();
}

std::vector<BlowupTower> parse_towers(const std::string& text) {
    std::vector<BlowupTower> out;
    std::istringstream in(text);
    std::string line;
    bool open = false;
    int lineno = 0;
    auto fail = [&](const std::string& msg) {
        throw MathError("tower description line " + std::to_string(lineno) + ": " + msg);
    };
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        if (kw == "tower") {
            std::string name;
            if (!(ls >> name)) fail("missing tower name");
            out.emplace_back(name);
            open = true;
        } else if (kw == "base") {
            if (!open) fail("base outside a tower block");
            std::string a, b, kw2, curve;
            int idx = 1;
            if (!(ls >> a >> b)) fail("base needs two coordinate names");
            if (ls >> kw2) {
                if (kw2 != "curve" || !(ls >> curve >> idx) || (idx != 0 && idx != 1)) fail("malformed curve clause");
            } else {
                curve = "Delta";
            }
            BlowupTower t(out.back().name(), {a, b}, curve, idx);
            out.back() = t;
        } else if (kw == "step") {
            if (!open) fail("step outside a tower block");
            BlowupStep s;
            std::string cx, cy, rule;
            if (!(ls >> s.parent >> cx >> cy >> rule >> s.chart >> s.coords[0] >> s.coords[1] >> s.label))
                fail("step needs 8 fields");
            if (rule == "X")
                s.rule = BlowupRule::X;
            else if (rule == "Y")
                s.rule = BlowupRule::Y;
            else
                fail("rule must be X or Y");
            s.cx = parse_rational(cx);
            s.cy = parse_rational(cy);
            out.back().add_step(s);
        } else if (kw == "end") {
            open = false;
        } else {
            fail("unknown keyword " + kw);
        }
    }
    return out;
}

BlowupTower parse_tower(const std::string& text) {
    auto v = parse_towers(text);
    if (v.size() != 1) throw MathError("expected exactly one tower description");
    return v[0];
}

int TowerDivisor::mult(const std::string& label) const {
    auto it = mult_.find(label);
    return it == mult_.end() ? 0 : it->second;
}

bool operator==(const TowerDivisor& a, const TowerDivisor& b) {
    return divisor_compare(a, b) == DivisorOrder::Equal;
}

std::string TowerDivisor::to_string(const std::string& base_label) const {
    std::ostringstream os;
    bool first = true;
    auto put = [&](int m, const std::string& l) {
        if (m == 0) return;
        if (!first) os << "+";
        first = false;
        if (m != 1) os << m;
        os << l;
    };
    put(base_, base_label);
    for (const auto& [l, m] : mult_) put(m, l);
    if (first) os << "0";
    return os.str();
}

namespace {

// A coordinate line {coord[idx] = value} carrying a component of the divisor.
struct VisibleLine {
    std::string label;
    int idx;
    Rational value;
};

} // namespace

TowerDivisor standard_exceptional_divisor(const BlowupTower& tower, const TowerDivisor& base) {
    if (tower.length() == 0) throw MathError("empty tower");
    TowerDivisor d(base.base(), {});
    std::vector<std::vector<VisibleLine>> lines(tower.chart_count());
    lines[0].push_back({tower.base_curve(), tower.base_curve_coord(), Rational(0)});
    auto mult_of = [&](const std::string& label) { return label == tower.base_curve() ? d.base() : d.mult(label); };

    for (std::size_t k = 0; k < tower.length(); ++k) {
        const BlowupStep& s = tower.step(k);
        std::size_t parent = tower.parent_index(k + 1);
        int m = 1;
        std::vector<VisibleLine> next;
        for (const auto& l : lines[parent]) {
            const Rational& c = l.idx == 0 ? s.cx : s.cy;
            bool through = l.value == c;
            if (through) m += mult_of(l.label);
            if (s.rule == BlowupRule::X) {
                if (l.idx == 0 && !through) next.push_back({l.label, 0, l.value - s.cx});
                if (l.idx == 1 && through) next.push_back({l.label, 1, Rational(0)});
            } else {
                if (l.idx == 0 && through) next.push_back({l.label, 0, Rational(0)});
                if (l.idx == 1 && !through) next.push_back({l.label, 1, l.value - s.cy});
            }
        }
        next.push_back({s.label, s.divisor_coord(), Rational(0)});
        lines[k + 1] = std::move(next);
        d.set(s.label, m);
    }
    return d;
}

DivisorOrder divisor_compare(const TowerDivisor& a, const TowerDivisor& b) {
    std::set<std::string> labels;
    for (const auto& [l, m] : a.exceptional()) labels.insert(l);
    for (const auto& [l, m] : b.exceptional()) labels.insert(l);
    bool le = a.base() <= b.base(), ge = a.base() >= b.base();
    for (const auto& l : labels) {
        le = le && a.mult(l) <= b.mult(l);
        ge = ge && a.mult(l) >= b.mult(l);
    }
    if (le && ge) return DivisorOrder::Equal;
    if (le) return DivisorOrder::Less;
    if (ge) return DivisorOrder::Greater;
    return DivisorOrder::Incomparable;
}

TowerDivisor relabel(const TowerDivisor& d, const std::map<std::string, std::string>& corr,
                     const std::string& base_label) {
    TowerDivisor r(0, {});
    if (d.base() != 0) throw MathError("relabel expects a divisor supported on exceptional curves");
    for (const auto& [l, m] : d.exceptional()) {
        auto it = corr.find(l);
        if (it == corr.end()) throw MathError("no correspondence for " + l);
        if (it->second == base_label)
            r.set_base(r.base() + m);
        else
            r.set(it->second, r.mult(it->second) + m);
    }
    return r;
}

std::array<RatFunc, 2> chart_transition(const BlowupTower& tower, const std::string& from, const std::string& to) {
    std::size_t fi = tower.chart_index(from), ti = tower.chart_index(to);
    auto names = tower.chart_coords(ti);
    RatFunc a = RatFunc::variable(names[0]), b = RatFunc::variable(names[1]);
    auto base = tower.to_base(ti, a, b).first;
    return tower.from_base(fi, base[0], base[1]);
}

} // namespace sd
