#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "loggen/core/types.hpp"

namespace loggen::core {

// Finitely-supported complex sequence indexed from 1, the working model of
// an l^2 element. Entries are kept sorted by index with exact zeros dropped,
// so shift isometries and rank-one growth are represented without any
// fixed-dimension truncation artifact.
struct SeqVector {
    std::vector<std::pair<int, Complex>> entries;

    static SeqVector zero() { return {}; }
    static SeqVector basis(int k);

    Complex at(int k) const;
    int max_support() const; // 0 for the zero sequence
    bool is_zero() const { return entries.empty(); }
};

SeqVector seq_normalize(SeqVector x); // sort, merge duplicates, drop zeros
SeqVector seq_add(const SeqVector& a, const SeqVector& b);
SeqVector seq_scale(Complex c, const SeqVector& x);
SeqVector seq_sub(const SeqVector& a, const SeqVector& b);

// Sesquilinear pairing sum_i x_i conj(y_i).
Complex seq_dot(const SeqVector& x, const SeqVector& y);
double seq_norm(const SeqVector& x);

// Index map k -> k + offset; entries pushed below index 1 are dropped.
SeqVector seq_shift(const SeqVector& x, int offset);

// Embedding into C^dim; throws DimensionError if the support sticks out.
Vector seq_to_dense(const SeqVector& x, int dim);
SeqVector seq_from_dense(const Vector& v);

// Operator defined solely by its action on finitely-supported sequences.
struct ActionOperator {
    std::string descriptor;
    std::function<SeqVector(const SeqVector&)> apply;
};

ActionOperator zero_action();
ActionOperator identity_action();
ActionOperator scaled_identity_action(Complex c);
ActionOperator left_shift_pow(int n);  // (x_k) -> (x_{k+n})
ActionOperator right_shift_pow(int n); // (x_k) -> (x_{k-n})
// x -> scale * <x, pick> * image
ActionOperator rank_one_scaled(Complex scale, SeqVector pick, SeqVector image);

} // namespace loggen::core
