#include "surfdef/h1.hpp"

#include <exception>
#include <mutex>
#include <fstream>
#include <random>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#ifndef SURFDEF_DATA_DIR
#define SURFDEF_DATA_DIR "data"
#endif

namespace sd {

std::string read_text_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw MathError("cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string data_path(const std::string& rel) { return std::string(SURFDEF_DATA_DIR) + "/" + rel; }

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) out.push_back(trim(cur));
    return out;
}

std::array<std::string, 3> triple_of(const std::string& rest) {
    auto parts = split(rest, ';');
    if (parts.size() != 3) throw MathError("a map needs three components separated by ';'");
    return {parts[0], parts[1], parts[2]};
}

std::map<std::string, std::string> pairs_of(std::istringstream& ls) {
    std::map<std::string, std::string> m;
    std::string tok;
    while (ls >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) throw MathError("expected label=value, got " + tok);
        m[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return m;
}

template <class Fn>
void for_tasks(std::size_t n, ExecPolicy pol, Fn&& fn) {
    if (pol == ExecPolicy::Serial) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < long(n); ++i) {
        try {
            fn(std::size_t(i));
        } catch (...) {
#pragma omp critical
            if (!err) err = std::current_exception();
        }
    }
    if (err) std::rethrow_exception(err);
}

std::vector<int> identity_corr(std::size_t n) {
    std::vector<int> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = int(i);
    return c;
}

// For each divisor of tgt, the divisor of src sent onto it.
std::vector<int> target_corr(const BlowupTower& src, const BlowupTower& tgt,
                             const std::map<std::string, std::string>& corr) {
    std::vector<int> out(tgt.length(), -1);
    for (const auto& [s, t] : corr) {
        if (t == tgt.base_curve()) continue;
        out.at(tgt.divisor_index(t)) = int(src.divisor_index(s));
    }
    return out;
}

} // namespace

AutomorphismSpec parse_automorphism_spec(const std::string& text) {
    AutomorphismSpec spec;
    std::istringstream in(text);
    std::string line;
    std::string tower_text;
    std::vector<BlowupTower> towers;
    bool have_phi = false, have_inv = false;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string kw;
        if (!(ls >> kw) || kw[0] == '#') continue;
        std::string rest;
        std::getline(ls, rest);
        rest = trim(rest);
        if (kw == "param") {
            spec.param = rest;
        } else if (kw == "matrix") {
            std::vector<std::vector<RatFunc>> rows;
            while (std::getline(in, line) && trim(line) != "end") {
                if (trim(line).empty()) continue;
                std::vector<RatFunc> row;
                for (const auto& e : split(line, ';')) row.push_back(parse_ratfunc(e));
                rows.push_back(row);
            }
            spec.A = Matrix<RatFunc>::from_rows(rows);
            if (spec.A.rows() != 3 || spec.A.cols() != 3) throw MathError("matrix A must be 3x3");
        } else if (kw == "map") {
            std::istringstream rs(rest);
            std::string name;
            rs >> name;
            std::string body;
            std::getline(rs, body);
            spec.phi = triple_of(body);
            have_phi = true;
        } else if (kw == "inverse") {
            std::istringstream rs(rest);
            std::string name;
            rs >> name;
            std::string body;
            std::getline(rs, body);
            spec.phi_inv = triple_of(body);
            have_inv = true;
        } else if (kw == "tower") {
            std::string block = line + "\n";
            while (std::getline(in, line)) {
                block += line + "\n";
                if (trim(line) == "end") break;
            }
            auto t = parse_towers(block);
            towers.insert(towers.end(), t.begin(), t.end());
        } else if (kw == "correspondence") {
            std::istringstream rs(rest);
            std::string which;
            rs >> which;
            auto m = pairs_of(rs);
            if (which == "phi")
                spec.phi_corr = m;
            else if (which == "return")
                spec.return_corr = m;
            else
                throw MathError("unknown correspondence " + which);
        } else if (kw == "divisor") {
            std::istringstream rs(rest);
            std::string name;
            rs >> name;
            TowerDivisor d;
            for (const auto& [l, m] : pairs_of(rs)) d.set(l, std::stoi(m));
            spec.D1 = d;
        } else if (kw == "pole") {
            spec.pole = std::stoi(rest);
        } else if (kw == "complement") {
            std::istringstream rs(rest);
            std::string tok;
            while (rs >> tok) {
                auto dash = tok.find('-');
                std::size_t a = std::stoul(tok.substr(0, dash));
                std::size_t b = dash == std::string::npos ? a : std::stoul(tok.substr(dash + 1));
                for (std::size_t i = a; i <= b; ++i) spec.complement.push_back(i);
            }
        } else {
            throw MathError("unknown keyword in automorphism spec: " + kw);
        }
    }
    if (towers.size() != 2) throw MathError("automorphism spec needs exactly two towers");
    if (!have_phi || !have_inv) throw MathError("automorphism spec needs a map and its inverse");
    spec.P1 = towers[0];
    spec.P2 = towers[1];
    return spec;
}

AutomorphismSpec load_automorphism_spec(const std::string& path) {
    return parse_automorphism_spec(read_text_file(path));
}

void validate_spec(const AutomorphismSpec& spec) {
    TowerDivisor dp1 = standard_exceptional_divisor(spec.P1, {});
    TowerDivisor dp2 = standard_exceptional_divisor(spec.P2, {});
    TowerDivisor d2 = standard_exceptional_divisor(spec.P2, TowerDivisor(spec.pole, {}));
    if (!divisor_leq(spec.D1, dp1)) throw MathError("D1 is not bounded by the standard divisor of P1");
    if (!divisor_leq(relabel(spec.D1, spec.phi_corr, spec.P2.base_curve()), d2))
        throw MathError("phi_* D1 is not bounded by D2");
    if (!divisor_leq(relabel(dp2, spec.return_corr, spec.P1.base_curve()), dp1))
        throw MathError("the return map does not bound the last factor");
    if (!is_one_exceptional(spec.P1, spec.D1, dp1)) throw MathError("D1 is not 1-exceptional");
    auto check = BirationalMap<Rational>(parse_triple(spec.phi), parse_triple(spec.phi_inv));
    check.require_valid();
}

ParamAssignment Specialization::assignment() const {
    ParamAssignment a;
    a[var("alpha")] = alpha;
    for (std::size_t i = 0; i < lambda.size(); ++i) a[var("lam" + std::to_string(i + 1))] = lambda[i];
    for (std::size_t i = 0; i < mu.size(); ++i) a[var("mu" + std::to_string(i + 1))] = mu[i];
    return a;
}

std::string Specialization::to_string() const {
    std::string s = "alpha=" + sd::to_string(alpha);
    for (std::size_t i = 0; i < lambda.size(); ++i) s += " lam" + std::to_string(i + 1) + "=" + sd::to_string(lambda[i]);
    for (std::size_t i = 0; i < mu.size(); ++i) s += " mu" + std::to_string(i + 1) + "=" + sd::to_string(mu[i]);
    return s;
}

Specialization random_specialization(const AutomorphismSpec& spec, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> num(-40, 40), den(1, 6);
    std::set<Rational> used;
    auto draw = [&]() {
        for (;;) {
            Rational r(num(rng), den(rng));
            r.canonicalize();
            if (r != 0 && r != 1 && r != -1 && used.insert(r).second) return r;
        }
    };
    Specialization sp;
    for (;;) {
        sp.alpha = draw();
        ParamAssignment a{{var(spec.param), sp.alpha}};
        Matrix<Rational> A = spec.A.map([&](const RatFunc& f) { return f.evaluate(a).constant_value(); });
        if (determinant(A) != 0) break;
    }
    for (std::size_t i = 0; i < spec.P1.length(); ++i) sp.lambda.push_back(draw());
    for (std::size_t i = 0; i < spec.P2.length(); ++i) sp.mu.push_back(draw());
    return sp;
}

PipelineMaps build_maps(const AutomorphismSpec& spec, const Rational& alpha) {
    ParamAssignment a{{var(spec.param), alpha}};
    Matrix<Rational> A = spec.A.map([&](const RatFunc& f) { return f.evaluate(a).constant_value(); });
    auto Ainv = inverse(A);
    if (!Ainv) throw NonGenericParameter("A is singular at this parameter value");
    PipelineMaps m;
    m.phi = BirationalMap<Rational>(parse_triple(spec.phi), parse_triple(spec.phi_inv));
    m.A = BirationalMap<Rational>::linear(A, *Ainv);
    m.A_inv = m.A.inverse();
    BirationalMap<Rational> AphiA = m.A.after(m.phi).after(m.A);
    m.g = AphiA.after(m.phi).after(m.A);
    m.AphiA_inv = AphiA.inverse();
    m.Ainv_phiinv = m.phi.after(m.A).inverse();
    return m;
}

template <class S>
Matrix<S> geometric_residues(const BirationalMap<Rational>* h, const BlowupTower& src, const BlowupTower& tgt,
                             const std::vector<S>& params, const std::vector<int>& corr, ExecPolicy pol) {
    auto gb = geometric_basis(src);
    std::size_t nk = tgt.length();
    Matrix<S> out(2 * nk, gb.size());
    for_tasks(gb.size() * nk, pol, [&](std::size_t t) {
        std::size_t col = t / nk, k = t % nk;
        int j = corr.at(k);
        if (j < 0) return;
        const FieldSource& piece = gb[col].pieces.at(open_for_divisor(src, std::size_t(j)));
        auto r = residue<S>(h, piece, tgt, k, params.at(k));
        out(2 * k, col) = r[0];
        out(2 * k + 1, col) = r[1];
    });
    return out;
}

template <class S>
Matrix<S> field_residues(const BirationalMap<Rational>* h, const std::vector<FieldSource>& fields,
                         const BlowupTower& tgt, const std::vector<S>& params, ExecPolicy pol) {
    std::size_t nk = tgt.length();
    Matrix<S> out(2 * nk, fields.size());
    for_tasks(fields.size() * nk, pol, [&](std::size_t t) {
        std::size_t col = t / nk, k = t % nk;
        auto r = residue<S>(h, fields[col], tgt, k, params.at(k));
        out(2 * k, col) = r[0];
        out(2 * k + 1, col) = r[1];
    });
    return out;
}

template Matrix<Rational> geometric_residues<Rational>(const BirationalMap<Rational>*, const BlowupTower&,
                                                       const BlowupTower&, const std::vector<Rational>&,
                                                       const std::vector<int>&, ExecPolicy);
template Matrix<RatFunc> geometric_residues<RatFunc>(const BirationalMap<Rational>*, const BlowupTower&,
                                                     const BlowupTower&, const std::vector<RatFunc>&,
                                                     const std::vector<int>&, ExecPolicy);
template Matrix<Rational> field_residues<Rational>(const BirationalMap<Rational>*, const std::vector<FieldSource>&,
                                                   const BlowupTower&, const std::vector<Rational>&, ExecPolicy);
template Matrix<RatFunc> field_residues<RatFunc>(const BirationalMap<Rational>*, const std::vector<FieldSource>&,
                                                 const BlowupTower&, const std::vector<RatFunc>&, ExecPolicy);

Matrix<Rational> base_block(const AutomorphismSpec& spec) {
    auto phi = BirationalMap<Rational>(parse_triple(spec.phi), parse_triple(spec.phi_inv));
    auto g = affine_forward(phi), gi = affine_inverse(phi);
    auto gb = geometric_basis(spec.P1);
    int m = spec.pole;
    std::size_t nb = std::size_t(m * (m + 5) + m);
    Matrix<Rational> out(nb, gb.size());
    for (std::size_t c = 0; c < gb.size(); ++c) {
        MeroVectorField z = gb[c].pieces.back().to_mero();
        MeroVectorField w = pushforward(z, g, gi);
        out.set_column(c, base_coordinates(w, m));
    }
    return out;
}

namespace {

Matrix<Rational> taylor_column(const Matrix<Rational>& Z, const BirationalMap<Rational>* h, const FieldSource& f) {
    auto t = taylor7<Rational>(h, f);
    Matrix<Rational> v(7, 1);
    for (int i = 0; i < 7; ++i) v(i, 0) = t[i];
    return Z * v;
}

} // namespace

PipelineBlocks compute_blocks(const AutomorphismSpec& spec, const Specialization& sp, ExecPolicy pol) {
    static std::mutex cache_mu;
    static std::map<std::string, Matrix<Rational>> lbase_cache;
    PipelineBlocks b;
    const BlowupTower &P1 = spec.P1, &P2 = spec.P2;
    std::size_t n1 = P1.length(), n2 = P2.length();
    int m = spec.pole;
    std::size_t nb = std::size_t(m * (m + 5) + m);
    b.n1 = n1;
    b.n2 = n2;
    b.nbase = nb;
    PipelineMaps M = build_maps(spec, sp.alpha);

    b.K1 = geometric_residues<Rational>(nullptr, P1, P1, sp.lambda, identity_corr(n1), pol);
    b.K2 = geometric_residues<Rational>(nullptr, P2, P2, sp.mu, identity_corr(n2), pol);
    b.Lres = geometric_residues<Rational>(&M.phi, P1, P2, sp.mu, target_corr(P1, P2, spec.phi_corr), pol);
    {
        std::string key = P1.serialize() + spec.phi[0] + spec.phi[1] + spec.phi[2] + std::to_string(m);
        std::lock_guard<std::mutex> lock(cache_mu);
        auto it = lbase_cache.find(key);
        if (it == lbase_cache.end()) it = lbase_cache.emplace(key, base_block(spec)).first;
        b.Lbase = it->second;
    }
    b.R = geometric_residues<Rational>(&M.g, P2, P1, sp.lambda, target_corr(P2, P1, spec.return_corr), pol);
    auto K1i = inverse(b.K1), K2i = inverse(b.K2);
    if (!K1i || !K2i) throw NonGenericParameter("residue matrix of a geometric basis is singular");
    b.Q = b.R * *K2i;

    auto tf = taylor_fields();
    b.Z1 = field_residues<Rational>(nullptr, tf, P1, sp.lambda, pol);
    b.Z2 = field_residues<Rational>(nullptr, tf, P2, sp.mu, pol);

    VBasis vb = v_basis(m);
    std::vector<FieldSource> a, all;
    for (const auto& f : vb.a) a.push_back(FieldSource::base(f));
    for (const auto& f : vb.all()) all.push_back(FieldSource::base(f));

    std::size_t wdim = 2 * n1 + 4 * n2;
    b.V1 = Matrix<Rational>(wdim, a.size());
    for_tasks(a.size(), pol, [&](std::size_t i) {
        b.V1.set_block(0, i, taylor_column(b.Z1, nullptr, a[i]));
        b.V1.set_block(2 * n1, i, taylor_column(b.Z2, &M.A_inv, a[i]));
        b.V1.set_block(2 * n1 + 2 * n2, i, taylor_column(b.Z2, &M.AphiA_inv, a[i]));
    });

    std::size_t rows2 = 2 * n1 + 2 * n2 + nb + 2 * n2;
    b.V2 = Matrix<Rational>(rows2, all.size());
    for_tasks(all.size(), pol, [&](std::size_t i) {
        b.V2.set_block(0, i, taylor_column(b.Z1, &M.A, all[i]));
        if (i >= a.size()) b.V2(2 * n1 + 2 * n2 + (i - a.size()), i) = 1;
        b.V2.set_block(2 * n1 + 2 * n2 + nb, i, taylor_column(b.Z2, &M.Ainv_phiinv, all[i]));
    });
    b.V2.set_block(2 * n1, 0, field_residues<Rational>(nullptr, all, P2, sp.mu, pol));

    b.Y = Matrix<Rational>(rows2, wdim);
    b.Y.set_block(2 * n1, 0, b.Lres.vcat(b.Lbase) * *K1i);
    b.Y.set_block(2 * n1 + 2 * n2 + nb, 2 * n1, Matrix<Rational>::identity(2 * n2));
    b.Y.set_block(0, 2 * n1 + 2 * n2, b.Q);
    b.iota = Matrix<Rational>(rows2, wdim);
    b.iota.set_block(0, 0, Matrix<Rational>::identity(2 * n1 + 2 * n2));
    b.iota.set_block(2 * n1 + 2 * n2 + nb, 2 * n1 + 2 * n2, Matrix<Rational>::identity(2 * n2));
    return b;
}

std::vector<std::size_t> greedy_complement(const Matrix<Rational>& V1) {
    std::vector<std::size_t> sel;
    Matrix<Rational> cur = V1;
    std::size_t r = rank(cur);
    for (std::size_t i = 0; i < V1.rows() && r < V1.rows(); ++i) {
        Matrix<Rational> e(V1.rows(), 1);
        e(i, 0) = 1;
        Matrix<Rational> next = cur.hcat(e);
        std::size_t nr = rank(next);
        if (nr > r) {
            cur = next;
            r = nr;
            sel.push_back(i);
        }
    }
    return sel;
}

Matrix<Rational> h1_matrix(const PipelineBlocks& b, const std::vector<std::size_t>& complement) {
    std::size_t wdim = b.V1.rows();
    Matrix<Rational> E(wdim, complement.size());
    for (std::size_t c = 0; c < complement.size(); ++c) E(complement[c], c) = 1;
    if (rank(E.hcat(b.V1)) != wdim || complement.size() + b.V1.cols() != wdim)
        throw DimensionMismatch("complement does not complete V(D1) to W(D1)");
    Matrix<Rational> big = (b.iota * E).hcat(b.V2);
    if (big.rows() != big.cols()) throw DimensionMismatch("W(frak D2) coordinates do not match the target split");
    auto sol = solve(big, b.Y * E);
    if (!sol) throw NonGenericParameter("singular target split at this specialization");
    return sol->block(0, 0, complement.size(), complement.size());
}

H1ActionResult compute_h1_action(const AutomorphismSpec& spec, const H1Options& opt) {
    H1ActionResult res;
    std::size_t expected = 2 * (spec.P1.length() + 2 * spec.P2.length()) - 8;
    std::uint64_t next_seed = opt.seed;
    for (int run = 0; run < opt.seeds; ++run) {
        for (;;) {
            Specialization sp = random_specialization(spec, next_seed++);
            try {
                PipelineBlocks b = compute_blocks(spec, sp, opt.policy);
                auto comp = opt.greedy ? greedy_complement(b.V1) : spec.complement;
                if (comp.size() != expected)
                    throw DimensionMismatch("quotient dimension " + std::to_string(comp.size()) + " != 2N-8 = " +
                                            std::to_string(expected));
                Matrix<Rational> psi = h1_matrix(b, comp);
                QPoly cp = charpoly(psi);
                if (run == 0) {
                    res.dimension = comp.size();
                    res.matrix = psi;
                    res.charpoly = cp;
                } else if (!(cp == res.charpoly)) {
                    throw SpecializationMismatch("characteristic polynomials differ between specializations");
                }
                res.specializations.push_back(sp);
                break;
            } catch (const NonGenericParameter&) {
            } catch (const SpecializationMismatch&) {
                if (res.retries + 1 >= opt.max_retries) throw;
            }
            if (++res.retries >= opt.max_retries) throw NonGenericParameter("no generic specialization found");
        }
    }
    res.factored = factor_over_Q(res.charpoly);
    res.jordan = jordan_structure(res.matrix);
    return res;
}

// ---- tables ----

const std::vector<std::string> kTableNames = {"K", "L", "Q", "Z1", "Z2", "tM", "tNa", "tNb", "tNc", "tNd"};

Matrix<RatFunc> parse_table(const std::string& text) {
    std::istringstream in(text);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::size_t r = 0, c = 0;
    std::string field;
    if (!(hs >> r >> c >> field)) throw MathError("malformed table header");
    Matrix<RatFunc> m(r, c);
    std::string line;
    for (std::size_t i = 0; i < r; ++i) {
        if (!std::getline(in, line)) throw MathError("table has too few rows");
        auto cells = split(line, ';');
        if (cells.size() != c) throw MathError("table row " + std::to_string(i) + " has wrong length");
        for (std::size_t j = 0; j < c; ++j) m(i, j) = parse_ratfunc(cells[j]);
    }
    return m;
}

Matrix<RatFunc> load_table(const std::string& path) { return parse_table(read_text_file(path)); }

std::string serialize_table(const Matrix<RatFunc>& m) {
    std::ostringstream os;
    os << m.rows() << " " << m.cols() << " RatFunc\n";
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " ; " : "") << m(i, j).to_string();
        os << "\n";
    }
    return os.str();
}

Matrix<Rational> table_from_blocks(const std::string& name, const PipelineBlocks& b) {
    std::size_t n1 = b.n1, n2 = b.n2, na = b.V1.cols();
    std::size_t m = (b.V2.cols() - na) - 0;
    // m = nb_b + nb_c + nb_d with nb_b = nb_c = p(p+5)/2, nb_d = p
    int p = 0;
    while (std::size_t(p * (p + 5) + p) < m) ++p;
    std::size_t nbq = std::size_t(p * (p + 5) / 2);
    if (name == "K") return b.K1;
    if (name == "L") return b.Lres.vcat(b.Lbase);
    if (name == "Q") return b.Q;
    if (name == "Z1") return b.Z1;
    if (name == "Z2") return b.Z2;
    if (name == "tM") return b.V1.block(0, 0, 2 * n1, na).transpose();
    Matrix<Rational> res = b.V2.block(2 * n1, 0, 2 * n2, b.V2.cols());
    if (name == "tNa") return res.block(0, 0, 2 * n2, na).transpose();
    if (name == "tNb") return res.block(0, na, 2 * n2, nbq).transpose();
    if (name == "tNc") return res.block(0, na + nbq, 2 * n2, nbq).transpose();
    if (name == "tNd") return res.block(0, na + 2 * nbq, 2 * n2, std::size_t(p)).transpose();
    throw MathError("unknown table " + name);
}

Matrix<RatFunc> symbolic_table(const std::string& name, const AutomorphismSpec& spec) {
    std::vector<RatFunc> lam, mu;
    for (std::size_t i = 0; i < spec.P1.length(); ++i) lam.push_back(RatFunc::variable("lam" + std::to_string(i + 1)));
    for (std::size_t i = 0; i < spec.P2.length(); ++i) mu.push_back(RatFunc::variable("mu" + std::to_string(i + 1)));
    if (name == "K")
        return geometric_residues<RatFunc>(nullptr, spec.P1, spec.P1, lam, identity_corr(spec.P1.length()),
                                           ExecPolicy::Serial);
    if (name == "Z1") return field_residues<RatFunc>(nullptr, taylor_fields(), spec.P1, lam, ExecPolicy::Serial);
    if (name == "Z2") return field_residues<RatFunc>(nullptr, taylor_fields(), spec.P2, mu, ExecPolicy::Serial);
    throw MathError("no symbolic mode for table " + name);
}

TableDiff compare_tables(const std::string& name, const Matrix<RatFunc>& expected, const Matrix<RatFunc>& got) {
    TableDiff d;
    d.name = name;
    d.rows = got.rows();
    d.cols = got.cols();
    if (expected.rows() != got.rows() || expected.cols() != got.cols()) {
        d.shape_ok = false;
        return d;
    }
    for (std::size_t i = 0; i < got.rows(); ++i)
        for (std::size_t j = 0; j < got.cols(); ++j)
            if (expected(i, j) != got(i, j)) d.diffs.push_back({i, j, expected(i, j).to_string(), got(i, j).to_string()});
    return d;
}

TableDiff verify_table(const std::string& name, const AutomorphismSpec&, const Specialization& sp,
                       const PipelineBlocks& b, const Matrix<RatFunc>& golden) {
    auto a = sp.assignment();
    Matrix<RatFunc> expected = golden.map([&](const RatFunc& f) { return f.evaluate(a); });
    Matrix<RatFunc> got = table_from_blocks(name, b).map([](const Rational& r) { return RatFunc(r); });
    return compare_tables(name, expected, got);
}

} // namespace sd
