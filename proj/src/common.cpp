#include "gglab/common.hpp"

#include <algorithm>
#include <cmath>

namespace gg {

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty()) throw input_error("matrix: no rows");
    Matrix m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_) throw input_error("matrix: ragged rows");
        for (std::size_t j = 0; j < m.cols_; ++j) m(i, j) = rows[i][j];
    }
    return m;
}

double Matrix::min() const {
    if (data_.empty()) throw input_error("matrix: empty");
    return *std::min_element(data_.begin(), data_.end());
}

double Matrix::max() const {
    if (data_.empty()) throw input_error("matrix: empty");
    return *std::max_element(data_.begin(), data_.end());
}

double Matrix::max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw input_error("matrix: dimension mismatch");
    double m = 0.0;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
        m = std::max(m, std::abs(a.data_[k] - b.data_[k]));
    return m;
}

}  // namespace gg
