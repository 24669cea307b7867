#pragma once

#include <optional>
#include <vector>

#include "rsz/field.hpp"

namespace rsz {

// Dense exact matrix. Entries live in the ambient rationals; operations that
// depend on the field take a Field and keep entries canonical for it.
class Mat {
public:
    Mat() = default;
    Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols, mpq_class(0)) {}

    static Mat identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    mpq_class& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const mpq_class& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    bool is_zero() const;
    bool operator==(const Mat& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<mpq_class> a_;
};

Mat mat_add(const Mat& a, const Mat& b, const Field& f);
Mat mat_sub(const Mat& a, const Mat& b, const Field& f);
Mat mat_mul(const Mat& a, const Mat& b, const Field& f);
Mat mat_scale(const mpq_class& c, const Mat& a, const Field& f);
Mat mat_pow(const Mat& a, unsigned long long e, const Field& f);
Mat mat_transpose(const Mat& a);

int rank(Mat a, const Field& f);

// reduced row echelon form; returns pivot column indices
std::vector<int> rref_in_place(Mat& a, const Field& f);

// columns form the standard RREF basis of { x : a x = 0 }
Mat nullspace(const Mat& a, const Field& f);

// some solution of a x = b for each column of b, or nullopt if inconsistent
std::optional<Mat> solve(const Mat& a, const Mat& b, const Field& f);

// the pivot columns of a, as a basis of its column space
Mat column_space_basis(const Mat& a, const Field& f);

bool is_invertible(const Mat& a, const Field& f);

mpq_class det(Mat a, const Field& f);

// characteristic polynomial det(tI - a) over the rationals, coefficients by
// ascending degree (size n+1, monic)
std::vector<mpq_class> charpoly_rational(const Mat& a);

} // namespace rsz
