#include "lineshape/crlb.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>

#include "lineshape/signal_model.hpp"

namespace lineshape {

FisherMatrix fisher_information(const std::vector<ComponentParams>& components,
                                const TimeGrid& grid, double sigma2) {
    if (!(sigma2 > 0.0)) throw std::invalid_argument("sigma2 must be positive");
    grid.validate();
    const std::size_t n = grid.size();
    const std::size_t dim = 5 * components.size();

    // Jacobian of the model mean, one column per parameter, component order
    // (r, phi, omega, beta, gamma).
    Eigen::MatrixXcd jac(n, dim);
    for (std::size_t c = 0; c < components.size(); ++c) {
        const auto& psi = components[c];
        for (std::size_t i = 0; i < n; ++i) {
            const double t = grid.times[i];
            const cplx mu = component_value(t, psi);
            jac(i, 5 * c + 0) = mu / psi.r;
            jac(i, 5 * c + 1) = cplx{0.0, 1.0} * mu;
            jac(i, 5 * c + 2) = cplx{0.0, t} * mu;
            jac(i, 5 * c + 3) = -t * mu;
            jac(i, 5 * c + 4) = -t * t * mu;
        }
    }
    const Eigen::MatrixXd f = (2.0 / sigma2) * (jac.adjoint() * jac).real();

    FisherMatrix out;
    out.dim = dim;
    out.values.resize(dim * dim);
    // mirror the upper triangle so the stored matrix is exactly symmetric
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i; j < dim; ++j)
            out.values[i * dim + j] = out.values[j * dim + i] = f(i, j);
    return out;
}

std::vector<bool> active_mask(const std::vector<ComponentParams>& components) {
    std::vector<bool> mask;
    for (const auto& psi : components) {
        mask.push_back(true);
        mask.push_back(true);
        mask.push_back(true);
        mask.push_back(psi.cls != ModelClass::Cisoid);
        mask.push_back(psi.cls == ModelClass::Voigt);
    }
    return mask;
}

std::vector<double> crlb_diag(const FisherMatrix& fisher, const std::vector<bool>& active) {
    if (active.size() != fisher.dim)
        throw std::invalid_argument("mask length does not match the Fisher matrix");
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < active.size(); ++i)
        if (active[i]) idx.push_back(i);
    if (idx.empty()) return {};

    Eigen::MatrixXd sub(idx.size(), idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) sub(i, j) = fisher.at(idx[i], idx[j]);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(sub);
    const auto& vals = eig.eigenvalues();
    const double lmax = vals.maxCoeff();
    const double lmin = vals.minCoeff();
    if (!(lmax > 0.0) || lmin <= 0.0 || lmax / lmin > 1e12)
        throw SingularFisher("active Fisher submatrix is numerically singular");

    std::vector<double> out(idx.size());
    const auto& vecs = eig.eigenvectors();
    for (std::size_t i = 0; i < idx.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < idx.size(); ++j)
            acc += vecs(i, j) * vecs(i, j) / vals(j);
        out[i] = acc;
    }
    return out;
}

}  // namespace lineshape
