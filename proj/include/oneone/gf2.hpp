#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace oneone::gf2 {

using Vec = std::vector<std::uint8_t>;

struct Matrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Vec> a;
    Matrix() = default;
    Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r, Vec(c, 0)) {}
    std::uint8_t& at(std::size_t r, std::size_t c) { return a[r][c]; }
    std::uint8_t at(std::size_t r, std::size_t c) const { return a[r][c]; }
};

std::size_t rank(Matrix m);
// Some x with m x = b, or nothing when inconsistent.
std::optional<Vec> solve(const Matrix& m, const Vec& b);
std::optional<Matrix> inverse(const Matrix& m);
Matrix multiply(const Matrix& x, const Matrix& y);

}  // namespace oneone::gf2
