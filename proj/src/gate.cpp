#include "photmol/gate.hpp"

#include <cmath>
#include <numbers>

#include "photmol/errors.hpp"

namespace photmol {

namespace {

using cplx = std::complex<double>;

void check_square(const GateMatrix& g) {
    if (g.rows() == 0 || g.rows() != g.cols()) throw DimensionMismatch("gate must be a non-empty square matrix");
}

// e^{-i theta}, exact where cos or sin is exactly 0 or +-1
cplx unit_phase(double theta) {
    const double quarter = theta / (0.5 * std::numbers::pi);
    if (quarter == std::round(quarter) && std::abs(quarter) < 1e15) {
        switch (((static_cast<long long>(quarter) % 4) + 4) % 4) {
            case 0: return {1.0, 0.0};
            case 1: return {0.0, -1.0};
            case 2: return {-1.0, 0.0};
            default: return {0.0, 1.0};
        }
    }
    return std::exp(cplx(0.0, -theta));
}

}  // namespace

const std::array<std::string, 4>& basis_labels() {
    static const std::array<std::string, 4> labels{"|00>", "|01>", "|10>", "|11>"};
    return labels;
}

GateMatrix cz_from_phase(double theta) {
    if (!std::isfinite(theta)) throw InvalidArgument("phase must be finite");
    GateMatrix g = GateMatrix::Identity(4, 4);
    g(3, 3) = unit_phase(theta);
    return g;
}

GateMatrix hadamard() {
    const double s = 1.0 / std::numbers::sqrt2;
    GateMatrix h(2, 2);
    h << s, s, s, -s;
    return h;
}

GateMatrix identity_gate(int dim) {
    if (dim <= 0) throw InvalidArgument("dimension must be positive");
    return GateMatrix::Identity(dim, dim);
}

GateMatrix tensor(const GateMatrix& a, const GateMatrix& b) {
    check_square(a);
    check_square(b);
    GateMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

GateMatrix compose(const std::vector<GateMatrix>& gates) {
    if (gates.empty()) throw InvalidArgument("nothing to compose");
    GateMatrix out = gates.front();
    check_square(out);
    for (std::size_t i = 1; i < gates.size(); ++i) {
        if (gates[i].rows() != out.cols() || gates[i].cols() != gates[i].rows()) {
            throw DimensionMismatch("gate dimensions do not match");
        }
        out = out * gates[i];
    }
    return out;
}

StateVector apply(const StateVector& state, const GateMatrix& gate) {
    check_square(gate);
    if (state.size() != gate.cols()) throw DimensionMismatch("state and gate dimensions differ");
    return gate * state;
}

GateMatrix cnot_reference() {
    GateMatrix g = GateMatrix::Zero(4, 4);
    g(0, 0) = 1.0;
    g(1, 1) = 1.0;
    g(2, 3) = 1.0;
    g(3, 2) = 1.0;
    return g;
}

GateMatrix cnot_from_cz() {
    const GateMatrix ih = tensor(identity_gate(2), hadamard());
    return compose(std::vector<GateMatrix>{ih, cz_from_phase(std::numbers::pi), ih});
}

double max_abs_deviation(const GateMatrix& a, const GateMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionMismatch("matrices differ in shape");
    return (a - b).cwiseAbs().maxCoeff();
}

double unitarity_deviation(const GateMatrix& g) {
    check_square(g);
    return max_abs_deviation(g * g.adjoint(), GateMatrix::Identity(g.rows(), g.cols()));
}

std::vector<TruthRow> truth_table(const GateMatrix& gate) {
    if (gate.rows() != 4 || gate.cols() != 4) throw DimensionMismatch("truth table needs a two-qubit gate");
    std::vector<TruthRow> rows;
    for (int i = 0; i < 4; ++i) {
        StateVector basis = StateVector::Zero(4);
        basis(i) = 1.0;
        rows.push_back(TruthRow{basis_labels()[static_cast<std::size_t>(i)], photmol::apply(basis, gate)});
    }
    return rows;
}

}  // namespace photmol
