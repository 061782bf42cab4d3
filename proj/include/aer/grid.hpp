#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <cstddef>
#include <optional>
#include <vector>

namespace aer {

// Uniform tensor grid on [x0, x1] x [-a, a], periodic in x.
class Grid2D {
public:
    Grid2D() = default;
    Grid2D(double x0, double x1, double a, int n, int m);

    double x0() const { return x0_; }
    double x1() const { return x1_; }
    double a() const { return a_; }
    int n() const { return n_; }
    int m() const { return m_; }
    int nx() const { return n_ + 1; }
    int ny() const { return m_ + 1; }
    std::size_t size() const { return static_cast<std::size_t>(nx()) * ny(); }

    double length() const { return x1_ - x0_; }
    double d1() const { return (x1_ - x0_) / n_; }
    double d2() const { return 2.0 * a_ / m_; }
    double x(int i) const { return i == n_ ? x1_ : x0_ + i * d1(); }
    double y(int j) const { return j == m_ ? a_ : -a_ + j * d2(); }

    // Row-major node index: rows are y, columns are x.
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(j) * nx() + i; }

    bool operator==(const Grid2D&) const = default;

private:
    double x0_ = 0.0, x1_ = 1.0, a_ = 1.0;
    int n_ = 2, m_ = 2;
};

// Samples on every node of a grid, stored row-major (j outer, i inner).
class Field2D {
public:
    Field2D() = default;
    explicit Field2D(const Grid2D& grid, double fill = 0.0);
    Field2D(const Grid2D& grid, std::vector<double> values, std::optional<double> time = {});

    const Grid2D& grid() const { return grid_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    std::optional<double> time() const { return time_; }
    void set_time(std::optional<double> t) { time_ = t; }

    double operator()(int i, int j) const { return values_[grid_.index(i, j)]; }
    double& operator()(int i, int j) { return values_[grid_.index(i, j)]; }

    bool all_finite() const;
    double max_abs() const;

private:
    Grid2D grid_;
    std::vector<double> values_;
    std::optional<double> time_;
};

Field2D operator+(const Field2D& a, const Field2D& b);
Field2D operator-(const Field2D& a, const Field2D& b);
Field2D operator*(double c, const Field2D& a);

// Retained rows 0..j_lo and j_hi..m.
struct RegionMask {
    int j_lo = 0;
    int j_hi = 0;

    void validate(const Grid2D& grid) const;
    bool retained(int j) const { return j <= j_lo || j >= j_hi; }
};

Field2D diff_x(const Field2D& f);
Field2D diff_y(const Field2D& f);
Field2D diff2_x(const Field2D& f);
Field2D diff2_y(const Field2D& f);

// Trapezoid-weighted discrete L2 norm over the whole rectangle.
double l2_norm(const Field2D& f);
double rel_l2_error(const Field2D& approx, const Field2D& exact);

// Sparse stencil operators on a block of rows [j_begin, j_end] of a grid.
// Unknowns are the n periodic columns (column n is column 0), ordered row-major,
// so a block has n * (j_end - j_begin + 1) unknowns.
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct RowBlock {
    int j_begin = 0;
    int j_end = 0;
    int rows() const { return j_end - j_begin + 1; }
};

SparseMatrix op_dx(const Grid2D& g, RowBlock b);       // periodic central
SparseMatrix op_dy(const Grid2D& g, RowBlock b);       // central, one-sided at block edges
SparseMatrix op_dxx(const Grid2D& g, RowBlock b);      // periodic 3-point
SparseMatrix op_dyy(const Grid2D& g, RowBlock b);      // 3-point, 4-point one-sided at edges
SparseMatrix op_fdx(const Grid2D& g, RowBlock b);      // periodic forward difference
SparseMatrix op_fdy(const Grid2D& g, RowBlock b);      // forward difference, rows-1 edges

// Quadrature weights d1*d2*w_j for each periodic unknown of a block; w_j = 1/2 on
// the block's first and last rows.
Eigen::VectorXd block_weights(const Grid2D& g, RowBlock b);

// Periodic unknowns (n columns) of a block <-> full field rows.
Eigen::VectorXd gather_block(const Field2D& f, RowBlock b);
void scatter_block(Field2D& f, RowBlock b, const Eigen::VectorXd& v);

}  // namespace aer
