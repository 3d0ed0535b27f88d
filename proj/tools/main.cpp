#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "eigenbc/invariant.hpp"
#include "eigenbc/io.hpp"
#include "eigenbc/numkit.hpp"
#include "eigenbc/oracles.hpp"
#include "eigenbc/process.hpp"
#include "eigenbc/szego.hpp"

namespace {

using nlohmann::json;
using namespace eigenbc;

json vector_to_json(const Vector& v)
{
    json out = json::array();
    for (Index i = 0; i < v.size(); ++i)
        out.push_back(io::complex_to_json(v(i)));
    return out;
}

json zeros_to_json(const SymbolSpectrum& s, bool inside)
{
    const auto& list = inside ? s.inside() : s.outside();
    json out = json::array();
    for (Index i = 0; i < s.pair_count(); ++i) {
        json z;
        z["z"] = io::complex_to_json(list[i].location);
        z["kernel"] = vector_to_json(list[i].kernel);
        z["residue"] = io::complex_to_json(inside ? s.residue_inside(i)
                                                  : s.residue_outside(i));
        out.push_back(std::move(z));
    }
    return out;
}

BoundaryWeight boundary_or_eigen(const io::WeightFile& wf, Side side,
                                 const InvariantBoundaries& ib)
{
    if (side == Side::Left)
        return wf.left ? *wf.left : ib.left;
    return wf.right ? *wf.right : ib.right;
}

int run_validate(const std::string& path, const std::string& out_path)
{
    const io::WeightFile wf = io::load_weight(path);
    const Index d = wf.weight.dim();
    json j;
    j["d"] = d;
    j["alpha"] = wf.weight.alpha();
    j["hermitian_pd"] = true;
    j["coupling_rank"] = d - wf.weight.defect();
    j["defect"] = wf.weight.defect();
    j["regime"] = wf.weight.full_rank() ? "full-rank" : "rank-deficient";
    std::cout << j.dump(2) << "\n";
    if (!out_path.empty())
        io::save_weight(out_path, wf);
    return 0;
}

int run_spectrum(const std::string& path)
{
    const io::WeightFile wf = io::load_weight(path);
    const SymbolSpectrum s = compute_spectrum(wf.weight);
    json j;
    j["d"] = s.dim();
    j["defect"] = s.defect();
    j["zeros_inside"] = zeros_to_json(s, true);
    j["zeros_outside"] = zeros_to_json(s, false);
    if (s.defect() > 0) {
        j["kernel_upper"] = io::matrix_to_json(s.kernel_upper());
        j["kernel_lower"] = io::matrix_to_json(s.kernel_lower());
        j["tail_constant"] = io::matrix_to_json(s.tail_constant());
    }
    j["leading_coefficient"] = io::complex_to_json(s.leading_coefficient());
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_boundaries(const std::string& path)
{
    const io::WeightFile wf = io::load_weight(path);
    const SymbolSpectrum s = compute_spectrum(wf.weight);
    const InvariantBoundaries ib = invariant_boundaries(wf.weight, s);
    json j;
    j["W_lt1"] = io::matrix_to_json(ib.forward);
    j["W_gt1_inv"] = io::matrix_to_json(ib.backward);
    j["B_L"] = io::matrix_to_json(ib.left.matrix());
    j["B_R"] = io::matrix_to_json(ib.right.matrix());
    j["beta_L"] = ib.left.beta();
    j["beta_R"] = ib.right.beta();
    j["lambda"] = ib.eigenvalue;
    j["free_energy"] = ib.free_energy;
    j["basis_condition"] = ib.basis_condition;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_free_energy(const std::string& path, const std::string& method, int p)
{
    const io::WeightFile wf = io::load_weight(path);
    const SymbolSpectrum s = compute_spectrum(wf.weight);
    FreeEnergyMethod m;
    if (method == "eigen")
        m = FreeEnergyMethod::Eigenvalue;
    else if (method == "integral")
        m = FreeEnergyMethod::Integral;
    else if (method == "dft")
        m = FreeEnergyMethod::Dft;
    else
        throw ValidationError("free-energy: unknown method \"" + method + "\"");
    const double value = free_energy(wf.weight, s, m, p);
    json j;
    j["method"] = method;
    if (m == FreeEnergyMethod::Dft)
        j["p"] = p;
    j["value"] = value;
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_covariance(const std::string& path, int p)
{
    const io::WeightFile wf = io::load_weight(path);
    const SymbolSpectrum s = compute_spectrum(wf.weight);
    const BlockToeplitz sigma = covariance_toeplitz(s, p);
    json j;
    j["P"] = p;
    json coeffs = json::array();
    for (int k = -p; k <= p; ++k) {
        json c;
        c["k"] = k;
        c["value"] = io::matrix_to_json(sigma.coeff(k));
        coeffs.push_back(std::move(c));
    }
    j["coefficients"] = std::move(coeffs);
    j["sigma"] = io::matrix_to_json(sigma.dense());
    std::cout << j.dump(2) << "\n";
    return 0;
}

int run_sample(const std::string& path, int p, int n, std::uint64_t seed)
{
    const io::WeightFile wf = io::load_weight(path);
    const SymbolSpectrum s = compute_spectrum(wf.weight);
    const InvariantBoundaries ib = invariant_boundaries(wf.weight, s);
    const ChainLaw law =
        assemble_chain(wf.weight, boundary_or_eigen(wf, Side::Left, ib),
                       boundary_or_eigen(wf, Side::Right, ib), p);
    const auto draws = sample(law, n, seed);
    json j;
    j["P"] = p;
    j["n"] = n;
    j["seed"] = seed;
    j["toeplitz"] = law.toeplitz;
    json rows = json::array();
    for (const Vector& x : draws)
        rows.push_back(vector_to_json(x));
    j["draws"] = std::move(rows);
    std::cout << j.dump(2) << "\n";
    return 0;
}

json szego_table(const TrigPolySymbol& sym, int pmax)
{
    json rows = json::array();
    double worst = 0.0;
    for (int p = 1; p <= pmax; ++p) {
        const CorrectedToeplitz ct = corrected_toeplitz(sym, p);
        const double corrected = ct.matrix.dense().determinant().real();
        const double plain = plain_toeplitz_det(sym, p);
        const double identity = std::pow(ct.growth, p) * ct.kappa;
        worst = std::max(worst,
                         std::abs(corrected - identity) / std::abs(identity));
        json row;
        row["P"] = p;
        row["plain"] = plain;
        row["corrected"] = corrected;
        row["identity"] = identity;
        row["ratio"] = plain / corrected;
        rows.push_back(std::move(row));
    }
    const CorrectedToeplitz ct = corrected_toeplitz(sym, 1);
    json j;
    j["g"] = ct.growth;
    j["kappa"] = ct.kappa;
    j["G_L"] = io::matrix_to_json(ct.matrix.corner_left);
    j["G_R"] = io::matrix_to_json(ct.matrix.corner_right);
    j["identity_max_rel_err"] = worst;
    j["table"] = std::move(rows);
    return j;
}

int run_szego(const std::string& path, int p, const std::string& symbol_path)
{
    const io::WeightFile wf = io::load_weight(path);
    const GaussianWeight& w = wf.weight;
    const TrigPolySymbol sym({Matrix(w.ll() + w.rr()), Matrix(w.lr())});
    json j = szego_table(sym, p);
    if (!symbol_path.empty()) {
        const TrigPolySymbol high = io::load_trig_symbol(symbol_path);
        const TrigPolySymbol blocked = block_reduce(high);
        json b = szego_table(blocked, p);
        b["order"] = high.order();
        b["blocked_dim"] = blocked.dim();
        j["blocked"] = std::move(b);
    }
    std::cout << j.dump(2) << "\n";
    return 0;
}

struct VerifyState {
    double tol;
    int failures = 0;
};

void check(VerifyState& st, const std::string& label, const std::string& name,
           double err, double bound)
{
    const bool ok = err <= bound;
    if (!ok)
        ++st.failures;
    std::printf("%s  %-34s %s  (err %.3e, bound %.3e)\n", label.c_str(),
                name.c_str(), ok ? "ok" : "FAIL", err, bound);
}

void verify_weight(VerifyState& st, const GaussianWeight& w,
                   const std::string& label)
{
    const double tol = st.tol;
    const SymbolSpectrum s = compute_spectrum(w);
    const InvariantBoundaries ib = invariant_boundaries(w, s);

    for (Side side : {Side::Left, Side::Right}) {
        const Matrix& b =
            side == Side::Left ? ib.left.matrix() : ib.right.matrix();
        const auto report = oracles::riccati_fixed_point(w, side, 1e-13);
        const double err = report.converged
                               ? (report.value - b).norm() / (1.0 + b.norm())
                               : 1.0;
        check(st, label,
              side == Side::Left ? "boundary vs fixed point (left)"
                                 : "boundary vs fixed point (right)",
              err, tol);
        check(st, label,
              side == Side::Left ? "invariance residual (left)"
                                 : "invariance residual (right)",
              verify_invariance(w, b, side), tol);
    }

    {
        const long kmax = 10;
        const auto table = oracles::quadrature_fourier_table(w, kmax);
        double err = 0.0;
        for (long k = -kmax; k <= kmax; ++k)
            err = std::max(err, (fourier_coefficient(s, k).value -
                                 table[k + kmax]).norm());
        check(st, label, "Fourier coefficients vs quadrature", err, tol);

        const Matrix t = Matrix(w.ll() + w.rr());
        double rec = 0.0;
        for (long k = -kmax; k < kmax; ++k) {
            const Matrix lhs = fourier_coefficient(s, k).value * t +
                               fourier_coefficient(s, k + 1).value * w.rl() +
                               fourier_coefficient(s, k - 1).value * w.lr();
            const Matrix rhs = k == 0 ? Matrix(Matrix::Identity(w.dim(), w.dim()))
                                      : Matrix(Matrix::Zero(w.dim(), w.dim()));
            rec = std::max(rec, (lhs - rhs).norm());
        }
        check(st, label, "three-term recursion residual", rec, tol);
    }

    {
        const double fe = free_energy(w, s, FreeEnergyMethod::Eigenvalue);
        const double fi = free_energy(w, s, FreeEnergyMethod::Integral);
        check(st, label, "free energy eigen vs integral", std::abs(fe - fi),
              tol);
    }

    {
        const int p = 8;
        const Matrix sigma = covariance_toeplitz(s, p).dense();
        const Matrix q =
            chain_precision(w, ib.left.matrix(), ib.right.matrix(), p);
        const Index n = q.rows();
        check(st, label, "covariance inverts precision",
              (sigma * q - Matrix::Identity(n, n)).norm(), tol * double(n));
    }

    partition_function(w, ib.left, ib.right, 4, tol);
    std::printf("%s  %-34s ok  (two routes agree)\n", label.c_str(),
                "partition function consistency");

    if (w.full_rank()) {
        const TrigPolySymbol sym({Matrix(w.ll() + w.rr()), Matrix(w.lr())});
        double worst = 0.0;
        for (int p = 1; p <= 8; ++p) {
            const CorrectedToeplitz ct = corrected_toeplitz(sym, p);
            const double corrected = ct.matrix.dense().determinant().real();
            const double identity = std::pow(ct.growth, p) * ct.kappa;
            worst = std::max(worst, std::abs(corrected - identity) /
                                        std::abs(identity));
        }
        check(st, label, "corrected Toeplitz determinants", worst, tol);
    } else {
        std::printf("%s  %-34s skipped (rank-deficient coupling)\n",
                    label.c_str(), "corrected Toeplitz determinants");
    }
}

int run_verify(const std::vector<std::string>& files, int random_count,
               std::uint64_t seed, double tol)
{
    VerifyState st{tol};
    for (const auto& path : files) {
        const io::WeightFile wf = io::load_weight(path);
        verify_weight(st, wf.weight, path);
    }
    for (int i = 0; i < random_count; ++i) {
        const Index d = 1 + i % 4;
        verify_weight(st, oracles::random_weight(d, seed + i),
                      "random[" + std::to_string(i) + ",d=" +
                          std::to_string(d) + "]");
    }
    if (st.failures > 0) {
        std::printf("verify: %d check(s) failed\n", st.failures);
        return 3;
    }
    std::printf("verify: all checks passed\n");
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Invariant boundary conditions for one-dimensional "
                 "Gaussian Markov chains"};
    app.require_subcommand(1);

    double tol = 1e-8;
    app.add_option("--tol", tol, "verification tolerance")
        ->capture_default_str();

    std::string file, out_path, method = "eigen", symbol_path;
    int p = 1, draws = 1, random_count = 10;
    std::uint64_t seed = 0, verify_seed = 20260809;
    std::vector<std::string> verify_files;

    auto* validate = app.add_subcommand("validate", "check a weight file");
    validate->add_option("file", file)->required();
    validate->add_option("--out", out_path, "re-emit the parsed weight");

    auto* spectrum = app.add_subcommand("spectrum", "zeros, kernels, residues");
    spectrum->add_option("file", file)->required();

    auto* boundaries =
        app.add_subcommand("boundaries", "invariant boundary pair");
    boundaries->add_option("file", file)->required();

    auto* fe = app.add_subcommand("free-energy", "free energy per edge");
    fe->add_option("file", file)->required();
    fe->add_option("--method", method, "eigen | integral | dft")
        ->capture_default_str();
    fe->add_option("--p", p, "ring size for the dft method");

    auto* cov = app.add_subcommand("covariance", "covariance blocks");
    cov->add_option("file", file)->required();
    cov->add_option("--p", p, "truncation index")->required();

    auto* samp = app.add_subcommand("sample", "draw from a finite chain");
    samp->add_option("file", file)->required();
    samp->add_option("--p", p, "chain length")->required();
    samp->add_option("--n", draws, "number of draws")->required();
    samp->add_option("--seed", seed, "generator seed")->required();

    auto* szego = app.add_subcommand("szego", "corrected determinants");
    szego->add_option("file", file)->required();
    szego->add_option("--p", p, "largest truncation")->required();
    szego->add_option("--order-n", symbol_path,
                      "higher-order symbol file to block-reduce");

    auto* verify = app.add_subcommand("verify", "full oracle cross-check");
    verify->add_option("files", verify_files, "weight files")->required();
    verify->add_option("--random", random_count, "seeded random weights")
        ->capture_default_str();
    verify->add_option("--seed", verify_seed, "base seed")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*validate)
            return run_validate(file, out_path);
        if (*spectrum)
            return run_spectrum(file);
        if (*boundaries)
            return run_boundaries(file);
        if (*fe)
            return run_free_energy(file, method, p);
        if (*cov)
            return run_covariance(file, p);
        if (*samp)
            return run_sample(file, p, draws, seed);
        if (*szego)
            return run_szego(file, p, symbol_path);
        if (*verify)
            return run_verify(verify_files, random_count, verify_seed, tol);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const AssumptionViolation& e) {
        std::cerr << "assumption violation: " << e.what() << "\n";
        return 2;
    } catch (const NumericalFailure& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
