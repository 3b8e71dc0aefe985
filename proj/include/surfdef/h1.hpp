#pragma once

#include "surfdef/factor.hpp"
#include "surfdef/hmap.hpp"
#include "surfdef/matrix.hpp"
#include "surfdef/tower.hpp"
#include "surfdef/vecfield.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sd {

class SpecializationMismatch : public MathError {
public:
    using MathError::MathError;
};
class DimensionMismatch : public MathError {
public:
    using MathError::MathError;
};

// X = Bl(P1 u A P2 u A phi A P2), psi = A phi. The tower P1 is mapped by phi onto the
// tower P2 (up to one divisor sent to the base curve), and A phi A phi A maps P2 onto P1.
struct AutomorphismSpec {
    std::string param = "alpha";
    Matrix<RatFunc> A;
    std::array<std::string, 3> phi, phi_inv;
    BlowupTower P1, P2;
    std::map<std::string, std::string> phi_corr;    // P1 label -> P2 label or base curve
    std::map<std::string, std::string> return_corr; // P2 label -> P1 label
    TowerDivisor D1;
    int pole = 0;
    std::vector<std::size_t> complement;
};

AutomorphismSpec parse_automorphism_spec(const std::string& text);
AutomorphismSpec load_automorphism_spec(const std::string& path);
std::string read_text_file(const std::string& path);
std::string data_path(const std::string& rel);

// Checks D1 <= D_P1, phi_* D1 <= D2, psi_* frak D1 <= frak D2, and 1-exceptionality of D1.
void validate_spec(const AutomorphismSpec& spec);

struct Specialization {
    Rational alpha;
    std::vector<Rational> lambda, mu;
    ParamAssignment assignment() const;
    std::string to_string() const;
};

// Distinct nonzero small rationals.
Specialization random_specialization(const AutomorphismSpec& spec, std::uint64_t seed);

enum class ExecPolicy { Serial, Parallel };

struct PipelineBlocks {
    Matrix<Rational> K1, K2, Lres, Lbase, R, Q, Z1, Z2, V1, V2, Y, iota;
    std::size_t n1 = 0, n2 = 0, nbase = 0;
};

struct PipelineMaps {
    BirationalMap<Rational> phi, A, A_inv, g, AphiA_inv, Ainv_phiinv;
};
PipelineMaps build_maps(const AutomorphismSpec& spec, const Rational& alpha);

// Residue coordinates of h_* (geometric basis of src) on tgt; corr[k] is the source
// divisor read for target divisor k (-1: none).
template <class S>
Matrix<S> geometric_residues(const BirationalMap<Rational>* h, const BlowupTower& src, const BlowupTower& tgt,
                             const std::vector<S>& params, const std::vector<int>& corr, ExecPolicy pol);

// Residue coordinates of h_* f for fields f (columns).
template <class S>
Matrix<S> field_residues(const BirationalMap<Rational>* h, const std::vector<FieldSource>& fields,
                         const BlowupTower& tgt, const std::vector<S>& params, ExecPolicy pol);

// Base coordinates of phi_* (geometric basis of P1), independent of the parameters.
Matrix<Rational> base_block(const AutomorphismSpec& spec);

PipelineBlocks compute_blocks(const AutomorphismSpec& spec, const Specialization& sp,
                              ExecPolicy pol = ExecPolicy::Parallel);

// Complement of V(D1) in W(D1) by greedy selection of algebraic coordinates.
std::vector<std::size_t> greedy_complement(const Matrix<Rational>& V1);

// Matrix of p o psi_* o j on the complement.
Matrix<Rational> h1_matrix(const PipelineBlocks& b, const std::vector<std::size_t>& complement);

struct H1ActionResult {
    std::size_t dimension = 0;
    Matrix<Rational> matrix;
    QPoly charpoly;
    Factorization factored;
    JordanStructure jordan;
    std::vector<Specialization> specializations;
    int retries = 0;
};

struct H1Options {
    int seeds = 2;
    std::uint64_t seed = 1;
    bool greedy = false;
    ExecPolicy policy = ExecPolicy::Parallel;
    int max_retries = 8;
};

H1ActionResult compute_h1_action(const AutomorphismSpec& spec, const H1Options& opt = {});

// ---- printed tables ----

struct EntryDiff {
    std::size_t row, col;
    std::string expected, got;
};
struct TableDiff {
    std::string name;
    std::size_t rows = 0, cols = 0;
    bool shape_ok = true;
    std::vector<EntryDiff> diffs;
    bool ok() const { return shape_ok && diffs.empty(); }
};

extern const std::vector<std::string> kTableNames;

Matrix<RatFunc> load_table(const std::string& path);
Matrix<RatFunc> parse_table(const std::string& text);
std::string serialize_table(const Matrix<RatFunc>& m);

// The named table in printed orientation, recomputed at a specialization.
Matrix<Rational> table_from_blocks(const std::string& name, const PipelineBlocks& b);
// K, Z1, Z2 with the divisor parameters left symbolic (lam1.., mu1..).
Matrix<RatFunc> symbolic_table(const std::string& name, const AutomorphismSpec& spec);

TableDiff compare_tables(const std::string& name, const Matrix<RatFunc>& expected, const Matrix<RatFunc>& got);
TableDiff verify_table(const std::string& name, const AutomorphismSpec& spec, const Specialization& sp,
                       const PipelineBlocks& b, const Matrix<RatFunc>& golden);

} // namespace sd
