#include "loggen/core/sequence.hpp"

#include <algorithm>
#include <cmath>

namespace loggen::core {

SeqVector SeqVector::basis(int k) {
    if (k < 1) throw DomainError("SeqVector::basis: index must be >= 1");
    SeqVector e;
    e.entries.emplace_back(k, Complex(1.0, 0.0));
    return e;
}

Complex SeqVector::at(int k) const {
    for (const auto& [idx, val] : entries)
        if (idx == k) return val;
    return Complex(0.0, 0.0);
}

int SeqVector::max_support() const {
    return entries.empty() ? 0 : entries.back().first;
}

SeqVector seq_normalize(SeqVector x) {
    std::sort(x.entries.begin(), x.entries.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    SeqVector out;
    for (const auto& [idx, val] : x.entries) {
        if (idx < 1) throw DomainError("SeqVector: index must be >= 1");
        if (!is_finite(val)) throw DomainError("SeqVector: non-finite entry");
        if (!out.entries.empty() && out.entries.back().first == idx)
            out.entries.back().second += val;
        else
            out.entries.emplace_back(idx, val);
    }
    std::erase_if(out.entries,
                  [](const auto& e) { return e.second == Complex(0.0, 0.0); });
    return out;
}

SeqVector seq_add(const SeqVector& a, const SeqVector& b) {
    SeqVector merged = a;
    merged.entries.insert(merged.entries.end(), b.entries.begin(),
                          b.entries.end());
    return seq_normalize(std::move(merged));
}

SeqVector seq_scale(Complex c, const SeqVector& x) {
    SeqVector out;
    out.entries.reserve(x.entries.size());
    for (const auto& [idx, val] : x.entries)
        out.entries.emplace_back(idx, c * val);
    return seq_normalize(std::move(out));
}

SeqVector seq_sub(const SeqVector& a, const SeqVector& b) {
    return seq_add(a, seq_scale(Complex(-1.0, 0.0), b));
}

Complex seq_dot(const SeqVector& x, const SeqVector& y) {
    Complex s(0.0, 0.0);
    auto ix = x.entries.begin();
    auto iy = y.entries.begin();
    while (ix != x.entries.end() && iy != y.entries.end()) {
        if (ix->first < iy->first) ++ix;
        else if (iy->first < ix->first) ++iy;
        else {
            s += ix->second * std::conj(iy->second);
            ++ix;
            ++iy;
        }
    }
    return s;
}

double seq_norm(const SeqVector& x) {
    double s = 0.0;
    for (const auto& [idx, val] : x.entries) s += std::norm(val);
    return std::sqrt(s);
}

SeqVector seq_shift(const SeqVector& x, int offset) {
    SeqVector out;
    for (const auto& [idx, val] : x.entries)
        if (idx + offset >= 1) out.entries.emplace_back(idx + offset, val);
    return seq_normalize(std::move(out));
}

Vector seq_to_dense(const SeqVector& x, int dim) {
    if (x.max_support() > dim)
        throw DimensionError("seq_to_dense: support exceeds target dimension");
    Vector v = Vector::Zero(dim);
    for (const auto& [idx, val] : x.entries) v(idx - 1) = val;
    return v;
}

SeqVector seq_from_dense(const Vector& v) {
    SeqVector out;
    for (Eigen::Index i = 0; i < v.size(); ++i)
        if (v(i) != Complex(0.0, 0.0))
            out.entries.emplace_back(static_cast<int>(i) + 1, v(i));
    return out;
}

ActionOperator zero_action() {
    return {"zero", [](const SeqVector&) { return SeqVector::zero(); }};
}

ActionOperator identity_action() {
    return {"identity", [](const SeqVector& x) { return x; }};
}

ActionOperator scaled_identity_action(Complex c) {
    return {"scaled_identity",
            [c](const SeqVector& x) { return seq_scale(c, x); }};
}

ActionOperator left_shift_pow(int n) {
    if (n < 0) throw DomainError("left_shift_pow: power must be >= 0");
    return {"left_shift_pow " + std::to_string(n),
            [n](const SeqVector& x) { return seq_shift(x, -n); }};
}

ActionOperator right_shift_pow(int n) {
    if (n < 0) throw DomainError("right_shift_pow: power must be >= 0");
    return {"right_shift_pow " + std::to_string(n),
            [n](const SeqVector& x) { return seq_shift(x, n); }};
}

ActionOperator rank_one_scaled(Complex scale, SeqVector pick, SeqVector image) {
    return {"rank_one_scaled",
            [scale, pick = std::move(pick), image = std::move(image)](
                const SeqVector& x) {
                return seq_scale(scale * seq_dot(x, pick), image);
            }};
}

} // namespace loggen::core
