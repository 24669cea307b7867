#include "rsz/matrix.hpp"

#include <algorithm>

namespace rsz {

Mat Mat::identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

bool Mat::is_zero() const {
    return std::all_of(a_.begin(), a_.end(), [](const mpq_class& x) { return x == 0; });
}

Mat mat_add(const Mat& a, const Mat& b, const Field& f) {
    Mat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.at(i, j) = f.add(a.at(i, j), b.at(i, j));
    return r;
}

Mat mat_sub(const Mat& a, const Mat& b, const Field& f) {
    Mat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.at(i, j) = f.sub(a.at(i, j), b.at(i, j));
    return r;
}

Mat mat_mul(const Mat& a, const Mat& b, const Field& f) {
    if (a.cols() != b.rows())
        throw std::logic_error("mat_mul: shape mismatch");
    Mat r(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0)
                continue;
            for (int j = 0; j < b.cols(); ++j)
                if (b.at(k, j) != 0)
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    for (int i = 0; i < r.rows(); ++i)
        for (int j = 0; j < r.cols(); ++j)
            r.at(i, j) = f.norm(r.at(i, j));
    return r;
}

Mat mat_scale(const mpq_class& c, const Mat& a, const Field& f) {
    Mat r(a.rows(), a.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.at(i, j) = f.mul(c, a.at(i, j));
    return r;
}

Mat mat_pow(const Mat& a, unsigned long long e, const Field& f) {
    if (a.rows() != a.cols())
        throw std::logic_error("mat_pow: matrix must be square");
    Mat result = Mat::identity(a.rows());
    Mat base = a;
    while (e > 0) {
        if (e & 1)
            result = mat_mul(result, base, f);
        base = mat_mul(base, base, f);
        e >>= 1;
    }
    return result;
}

Mat mat_transpose(const Mat& a) {
    Mat r(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            r.at(j, i) = a.at(i, j);
    return r;
}

std::vector<int> rref_in_place(Mat& a, const Field& f) {
    std::vector<int> pivots;
    int row = 0;
    for (int col = 0; col < a.cols() && row < a.rows(); ++col) {
        int pivot = -1;
        for (int i = row; i < a.rows(); ++i)
            if (a.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            continue;
        if (pivot != row)
            for (int j = 0; j < a.cols(); ++j)
                std::swap(a.at(pivot, j), a.at(row, j));
        mpq_class inv = f.inv(a.at(row, col));
        for (int j = col; j < a.cols(); ++j)
            a.at(row, j) = f.mul(inv, a.at(row, j));
        for (int i = 0; i < a.rows(); ++i) {
            if (i == row || a.at(i, col) == 0)
                continue;
            mpq_class c = a.at(i, col);
            for (int j = col; j < a.cols(); ++j)
                a.at(i, j) = f.sub(a.at(i, j), f.mul(c, a.at(row, j)));
        }
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

int rank(Mat a, const Field& f) {
    return static_cast<int>(rref_in_place(a, f).size());
}

Mat nullspace(const Mat& a, const Field& f) {
    Mat r = a;
    auto pivots = rref_in_place(r, f);
    std::vector<bool> is_pivot(a.cols(), false);
    for (int c : pivots)
        is_pivot[c] = true;
    std::vector<int> free_cols;
    for (int c = 0; c < a.cols(); ++c)
        if (!is_pivot[c])
            free_cols.push_back(c);
    Mat basis(a.cols(), static_cast<int>(free_cols.size()));
    for (size_t k = 0; k < free_cols.size(); ++k) {
        int fc = free_cols[k];
        basis.at(fc, static_cast<int>(k)) = 1;
        for (size_t pi = 0; pi < pivots.size(); ++pi)
            basis.at(pivots[pi], static_cast<int>(k)) = f.neg(r.at(static_cast<int>(pi), fc));
    }
    return basis;
}

std::optional<Mat> solve(const Mat& a, const Mat& b, const Field& f) {
    if (a.rows() != b.rows())
        throw std::logic_error("solve: shape mismatch");
    Mat aug(a.rows(), a.cols() + b.cols());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j)
            aug.at(i, j) = a.at(i, j);
        for (int j = 0; j < b.cols(); ++j)
            aug.at(i, a.cols() + j) = b.at(i, j);
    }
    auto pivots = rref_in_place(aug, f);
    for (int p : pivots)
        if (p >= a.cols())
            return std::nullopt;
    Mat x(a.cols(), b.cols());
    for (size_t pi = 0; pi < pivots.size(); ++pi)
        for (int j = 0; j < b.cols(); ++j)
            x.at(pivots[pi], j) = aug.at(static_cast<int>(pi), a.cols() + j);
    return x;
}

Mat column_space_basis(const Mat& a, const Field& f) {
    Mat r = a;
    auto pivots = rref_in_place(r, f);
    Mat basis(a.rows(), static_cast<int>(pivots.size()));
    for (size_t k = 0; k < pivots.size(); ++k)
        for (int i = 0; i < a.rows(); ++i)
            basis.at(i, static_cast<int>(k)) = a.at(i, pivots[k]);
    return basis;
}

bool is_invertible(const Mat& a, const Field& f) {
    return a.rows() == a.cols() && rank(a, f) == a.rows();
}

mpq_class det(Mat a, const Field& f) {
    if (a.rows() != a.cols())
        throw std::logic_error("det: matrix must be square");
    mpq_class d(1);
    int n = a.rows();
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i)
            if (a.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            return 0;
        if (pivot != col) {
            for (int j = 0; j < n; ++j)
                std::swap(a.at(pivot, j), a.at(col, j));
            d = f.neg(d);
        }
        d = f.mul(d, a.at(col, col));
        mpq_class inv = f.inv(a.at(col, col));
        for (int i = col + 1; i < n; ++i) {
            if (a.at(i, col) == 0)
                continue;
            mpq_class c = f.mul(inv, a.at(i, col));
            for (int j = col; j < n; ++j)
                a.at(i, j) = f.sub(a.at(i, j), f.mul(c, a.at(col, j)));
        }
    }
    return d;
}

std::vector<mpq_class> charpoly_rational(const Mat& a) {
    // det(tI - a) by evaluation at t = 0..n and Lagrange interpolation
    Field f(FieldSpec::rationals());
    int n = a.rows();
    std::vector<mpq_class> xs(n + 1), ys(n + 1);
    for (int k = 0; k <= n; ++k) {
        xs[k] = k;
        Mat m(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                m.at(i, j) = (i == j ? mpq_class(k) : mpq_class(0)) - a.at(i, j);
        ys[k] = det(m, f);
    }
    // Newton's divided differences, then expand
    std::vector<mpq_class> dd = ys;
    for (int level = 1; level <= n; ++level)
        for (int k = n; k >= level; --k)
            dd[k] = (dd[k] - dd[k - 1]) / (xs[k] - xs[k - level]);
    std::vector<mpq_class> coeffs(n + 1, mpq_class(0));
    std::vector<mpq_class> basis{mpq_class(1)}; // product (t - x_0)...(t - x_{k-1})
    for (int k = 0; k <= n; ++k) {
        for (size_t i = 0; i < basis.size(); ++i)
            coeffs[i] += dd[k] * basis[i];
        if (k < n) {
            basis.push_back(0);
            for (int i = static_cast<int>(basis.size()) - 1; i >= 1; --i)
                basis[i] = basis[i - 1] - xs[k] * basis[i];
            basis[0] = -xs[k] * basis[0];
        }
    }
    return coeffs;
}

} // namespace rsz
