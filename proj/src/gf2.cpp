#include "oneone/gf2.hpp"

namespace oneone::gf2 {

namespace {

// Row-reduces [m | extra] in place; returns pivot columns of m.
std::vector<std::size_t> reduce(Matrix& m, std::vector<Vec>* extra) {
    std::vector<std::size_t> pivots;
    std::size_t row = 0;
    for (std::size_t c = 0; c < m.cols && row < m.rows; ++c) {
        std::size_t piv = row;
        while (piv < m.rows && !m.a[piv][c]) ++piv;
        if (piv == m.rows) continue;
        std::swap(m.a[piv], m.a[row]);
        if (extra) std::swap((*extra)[piv], (*extra)[row]);
        for (std::size_t r = 0; r < m.rows; ++r) {
            if (r == row || !m.a[r][c]) continue;
            for (std::size_t k = c; k < m.cols; ++k) m.a[r][k] ^= m.a[row][k];
            if (extra) {
                auto& er = (*extra)[r];
                const auto& es = (*extra)[row];
                for (std::size_t k = 0; k < er.size(); ++k) er[k] ^= es[k];
            }
        }
        pivots.push_back(c);
        ++row;
    }
    return pivots;
}

}  // namespace

std::size_t rank(Matrix m) { return reduce(m, nullptr).size(); }

std::optional<Vec> solve(const Matrix& m, const Vec& b) {
    Matrix w = m;
    std::vector<Vec> rhs(m.rows);
    for (std::size_t r = 0; r < m.rows; ++r) rhs[r] = Vec{b[r]};
    auto piv = reduce(w, &rhs);
    for (std::size_t r = piv.size(); r < m.rows; ++r)
        if (rhs[r][0]) return std::nullopt;
    Vec x(m.cols, 0);
    for (std::size_t i = 0; i < piv.size(); ++i) x[piv[i]] = rhs[i][0];
    return x;
}

std::optional<Matrix> inverse(const Matrix& m) {
    if (m.rows != m.cols) return std::nullopt;
    Matrix w = m;
    std::vector<Vec> id(m.rows, Vec(m.rows, 0));
    for (std::size_t i = 0; i < m.rows; ++i) id[i][i] = 1;
    if (reduce(w, &id).size() != m.rows) return std::nullopt;
    Matrix out(m.rows, m.rows);
    out.a = id;
    return out;
}

Matrix multiply(const Matrix& x, const Matrix& y) {
    Matrix out(x.rows, y.cols);
    for (std::size_t i = 0; i < x.rows; ++i)
        for (std::size_t k = 0; k < x.cols; ++k)
            if (x.a[i][k])
                for (std::size_t j = 0; j < y.cols; ++j) out.a[i][j] ^= y.a[k][j];
    return out;
}

}  // namespace oneone::gf2
