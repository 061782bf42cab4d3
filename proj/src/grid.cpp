#include "aer/grid.hpp"

#include "aer/errors.hpp"

#include <cmath>
#include <sstream>

namespace aer {

Grid2D::Grid2D(double x0, double x1, double a, int n, int m) : x0_(x0), x1_(x1), a_(a), n_(n), m_(m) {
    if (!(n >= 2 && m >= 2)) throw ConfigError("grid needs n >= 2 and m >= 2");
    if (!(x1 > x0)) throw ConfigError("grid needs x1 > x0");
    if (!(a > 0)) throw ConfigError("grid needs a > 0");
}

Field2D::Field2D(const Grid2D& grid, double fill) : grid_(grid), values_(grid.size(), fill) {}

Field2D::Field2D(const Grid2D& grid, std::vector<double> values, std::optional<double> time)
    : grid_(grid), values_(std::move(values)), time_(time) {
    if (values_.size() != grid_.size()) {
        std::ostringstream os;
        os << "field has " << values_.size() << " samples, grid needs " << grid_.size();
        throw ConfigError(os.str());
    }
}

bool Field2D::all_finite() const {
    for (double v : values_)
        if (!std::isfinite(v)) return false;
    return true;
}

double Field2D::max_abs() const {
    double r = 0.0;
    for (double v : values_) r = std::max(r, std::abs(v));
    return r;
}

static void require_same_grid(const Field2D& a, const Field2D& b) {
    if (!(a.grid() == b.grid())) throw ConfigError("fields live on different grids");
}

Field2D operator+(const Field2D& a, const Field2D& b) {
    require_same_grid(a, b);
    Field2D r = a;
    for (std::size_t i = 0; i < r.values().size(); ++i) r.values()[i] += b.values()[i];
    return r;
}

Field2D operator-(const Field2D& a, const Field2D& b) {
    require_same_grid(a, b);
    Field2D r = a;
    for (std::size_t i = 0; i < r.values().size(); ++i) r.values()[i] -= b.values()[i];
    return r;
}

Field2D operator*(double c, const Field2D& a) {
    Field2D r = a;
    for (double& v : r.values()) v *= c;
    return r;
}

void RegionMask::validate(const Grid2D& grid) const {
    if (!(0 <= j_lo && j_lo < j_hi && j_hi <= grid.m())) {
        std::ostringstream os;
        os << "invalid region mask j_lo=" << j_lo << " j_hi=" << j_hi << " for m=" << grid.m();
        throw ConfigError(os.str());
    }
}

namespace {

using Triplets = std::vector<Eigen::Triplet<double>>;

int wrap(int i, int n) { return ((i % n) + n) % n; }

int col(const Grid2D& g, RowBlock b, int i, int j) { return (j - b.j_begin) * g.n() + wrap(i, g.n()); }

SparseMatrix build(int rows, int cols, const Triplets& t) {
    SparseMatrix m(rows, cols);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

void check_block(const Grid2D& g, RowBlock b) {
    if (b.j_begin < 0 || b.j_end > g.m() || b.j_end < b.j_begin) throw ConfigError("row block outside grid");
}

// Applies a per-row operator and returns a full field with column n copied from column 0.
Field2D apply(const SparseMatrix& op, const Field2D& f) {
    const Grid2D& g = f.grid();
    RowBlock all{0, g.m()};
    Eigen::VectorXd out = op * gather_block(f, all);
    Field2D r(g);
    r.set_time(f.time());
    scatter_block(r, all, out);
    return r;
}

}  // namespace

SparseMatrix op_dx(const Grid2D& g, RowBlock b) {
    check_block(g, b);
    Triplets t;
    const double c = 1.0 / (2.0 * g.d1());
    for (int j = b.j_begin; j <= b.j_end; ++j)
        for (int i = 0; i < g.n(); ++i) {
            int r = col(g, b, i, j);
            t.emplace_back(r, col(g, b, i + 1, j), c);
            t.emplace_back(r, col(g, b, i - 1, j), -c);
        }
    int N = g.n() * b.rows();
    return build(N, N, t);
}

SparseMatrix op_dy(const Grid2D& g, RowBlock b) {
    check_block(g, b);
    Triplets t;
    const double h = g.d2();
    const int rows = b.rows();
    for (int j = b.j_begin; j <= b.j_end; ++j)
        for (int i = 0; i < g.n(); ++i) {
            int r = col(g, b, i, j);
            auto add = [&](int jj, double w) { t.emplace_back(r, col(g, b, i, jj), w); };
            if (rows == 1) continue;
            if (rows == 2) {
                add(b.j_begin, -1.0 / h);
                add(b.j_end, 1.0 / h);
            } else if (j == b.j_begin) {
                add(j, -3.0 / (2 * h));
                add(j + 1, 4.0 / (2 * h));
                add(j + 2, -1.0 / (2 * h));
            } else if (j == b.j_end) {
                add(j, 3.0 / (2 * h));
                add(j - 1, -4.0 / (2 * h));
                add(j - 2, 1.0 / (2 * h));
            } else {
                add(j + 1, 1.0 / (2 * h));
                add(j - 1, -1.0 / (2 * h));
            }
        }
    int N = g.n() * rows;
    return build(N, N, t);
}

SparseMatrix op_dxx(const Grid2D& g, RowBlock b) {
    check_block(g, b);
    Triplets t;
    const double c = 1.0 / (g.d1() * g.d1());
    for (int j = b.j_begin; j <= b.j_end; ++j)
        for (int i = 0; i < g.n(); ++i) {
            int r = col(g, b, i, j);
            t.emplace_back(r, col(g, b, i + 1, j), c);
            t.emplace_back(r, col(g, b, i, j), -2.0 * c);
            t.emplace_back(r, col(g, b, i - 1, j), c);
        }
    int N = g.n() * b.rows();
    return build(N, N, t);
}

SparseMatrix op_dyy(const Grid2D& g, RowBlock b) {
    check_block(g, b);
    Triplets t;
    const double c = 1.0 / (g.d2() * g.d2());
    const int rows = b.rows();
    for (int j = b.j_begin; j <= b.j_end; ++j)
        for (int i = 0; i < g.n(); ++i) {
            int r = col(g, b, i, j);
            auto add = [&](int jj, double w) { t.emplace_back(r, col(g, b, i, jj), w * c); };
            if (rows < 3) continue;
            if (j > b.j_begin && j < b.j_end) {
                add(j - 1, 1.0);
                add(j, -2.0);
                add(j + 1, 1.0);
            } else if (rows == 3) {
                add(b.j_begin, 1.0);
                add(b.j_begin + 1, -2.0);
                add(b.j_begin + 2, 1.0);
            } else if (j == b.j_begin) {
                add(j, 2.0);
                add(j + 1, -5.0);
                add(j + 2, 4.0);
                add(j + 3, -1.0);
            } else {
                add(j, 2.0);
                add(j - 1, -5.0);
                add(j - 2, 4.0);
                add(j - 3, -1.0);
            }
        }
    int N = g.n() * rows;
    return build(N, N, t);
}

SparseMatrix op_fdx(const Grid2D& g, RowBlock b) {
    check_block(g, b);
    Triplets t;
    const double c = 1.0 / g.d1();
    for (int j = b.j_begin; j <= b.j_end; ++j)
        for (int i = 0; i < g.n(); ++i) {
            int r = col(g, b, i, j);
            t.emplace_back(r, col(g, b, i + 1, j), c);
            t.emplace_back(r, r, -c);
        }
    int N = g.n() * b.rows();
    return build(N, N, t);
}

SparseMatrix op_fdy(const Grid2D& g, RowBlock b) {
    check_block(g, b);
    Triplets t;
    const double c = 1.0 / g.d2();
    int r = 0;
    for (int j = b.j_begin; j < b.j_end; ++j)
        for (int i = 0; i < g.n(); ++i, ++r) {
            t.emplace_back(r, col(g, b, i, j + 1), c);
            t.emplace_back(r, col(g, b, i, j), -c);
        }
    return build(g.n() * (b.rows() - 1), g.n() * b.rows(), t);
}

Eigen::VectorXd block_weights(const Grid2D& g, RowBlock b) {
    check_block(g, b);
    Eigen::VectorXd w(g.n() * b.rows());
    const double cell = g.d1() * g.d2();
    for (int j = b.j_begin; j <= b.j_end; ++j) {
        double wj = (b.rows() > 1 && (j == b.j_begin || j == b.j_end)) ? 0.5 : 1.0;
        for (int i = 0; i < g.n(); ++i) w[col(g, b, i, j)] = cell * wj;
    }
    return w;
}

Eigen::VectorXd gather_block(const Field2D& f, RowBlock b) {
    const Grid2D& g = f.grid();
    check_block(g, b);
    Eigen::VectorXd v(g.n() * b.rows());
    for (int j = b.j_begin; j <= b.j_end; ++j)
        for (int i = 0; i < g.n(); ++i) v[col(g, b, i, j)] = f(i, j);
    return v;
}

void scatter_block(Field2D& f, RowBlock b, const Eigen::VectorXd& v) {
    const Grid2D& g = f.grid();
    check_block(g, b);
    for (int j = b.j_begin; j <= b.j_end; ++j) {
        for (int i = 0; i < g.n(); ++i) f(i, j) = v[col(g, b, i, j)];
        f(g.n(), j) = f(0, j);
    }
}

Field2D diff_x(const Field2D& f) { return apply(op_dx(f.grid(), {0, f.grid().m()}), f); }
Field2D diff_y(const Field2D& f) { return apply(op_dy(f.grid(), {0, f.grid().m()}), f); }
Field2D diff2_x(const Field2D& f) { return apply(op_dxx(f.grid(), {0, f.grid().m()}), f); }
Field2D diff2_y(const Field2D& f) { return apply(op_dyy(f.grid(), {0, f.grid().m()}), f); }

double l2_norm(const Field2D& f) {
    const Grid2D& g = f.grid();
    double s = 0.0;
    for (int j = 0; j <= g.m(); ++j) {
        double wj = (j == 0 || j == g.m()) ? 0.5 : 1.0;
        for (int i = 0; i <= g.n(); ++i) {
            double wi = (i == 0 || i == g.n()) ? 0.5 : 1.0;
            s += wi * wj * f(i, j) * f(i, j);
        }
    }
    return std::sqrt(s * g.d1() * g.d2());
}

double rel_l2_error(const Field2D& approx, const Field2D& exact) {
    require_same_grid(approx, exact);
    double ref = l2_norm(exact);
    if (ref == 0.0) throw NumericalError("zero-norm reference");
    return l2_norm(approx - exact) / ref;
}

}  // namespace aer
