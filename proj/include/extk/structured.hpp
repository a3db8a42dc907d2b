#pragma once

#include <vector>

#include "extk/common.hpp"
#include "extk/hermitian.hpp"
#include "extk/tensor.hpp"

namespace extk {

/*
 * Matrix-free Σ_j M̃(j) on A ⊗ B^⊗k.
 *
 * A matvec costs k·dA²·dB^{k+1} flops: slot j is brought to slot 1 by an
 * index swap, contracted with one (dA·dB)×(dA·dB) GEMM against dB^{k-1}
 * columns, and swapped back. Memory stays O(k · dim).
 *
 * With half_transpose set, the slots hit by the half-system transpose (the
 * last ⌈k/2⌉ B slots) use M transposed on its B factor, which is exactly the
 * partial transpose of the embedded sum.
 */
class EmbeddedSumOp {
public:
    EmbeddedSumOp(CMatrix base, int dA, int dB, int k, bool half_transpose = false)
        : dA_(dA), dB_(dB), k_(k) {
        if (dA < 1 || dB < 1 || k < 1) throw validation_error("EmbeddedSumOp: bad dimensions");
        if (base.rows() != static_cast<long long>(dA) * dB || base.rows() != base.cols())
            throw validation_error("EmbeddedSumOp: base must be (dA·dB) square");
        n_ = dA;
        for (int j = 0; j < k; ++j) n_ *= dB;
        base_plain_ = std::move(base);
        transposed_slot_.assign(k + 1, false);
        if (half_transpose) {
            for (int j : half_transpose_factors(k)) transposed_slot_[j] = true;
            base_tb_ = CMatrix(base_plain_.rows(), base_plain_.cols());
            for (int a = 0; a < dA; ++a)
                for (int b = 0; b < dB; ++b)
                    for (int a2 = 0; a2 < dA; ++a2)
                        for (int b2 = 0; b2 < dB; ++b2)
                            base_tb_(a * dB + b, a2 * dB + b2) = base_plain_(a * dB + b2, a2 * dB + b);
        }
        build_swaps();
        scratch_in_.resize(n_);
        scratch_out_.resize(n_);
    }

    long long dim() const { return n_; }
    int slots() const { return k_; }

    CVector apply(const CVector& in) const {
        CVector out(n_);
        apply(in, out);
        return out;
    }

    void apply(const CVector& in, CVector& out) const {
        if (in.size() != n_) throw validation_error("EmbeddedSumOp::apply: size mismatch");
        out.setZero(n_);
        const long long rest = n_ / (static_cast<long long>(dA_) * dB_);
        using RowMat = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
        for (int j = 1; j <= k_; ++j) {
            const CMatrix& m = transposed_slot_[j] ? base_tb_ : base_plain_;
            const std::vector<long long>& sw = swaps_[j - 1];
            if (sw.empty()) {
                Eigen::Map<const RowMat> v(in.data(), dA_ * dB_, rest);
                Eigen::Map<RowMat> r(scratch_out_.data(), dA_ * dB_, rest);
                r.noalias() = m * v;
                out += scratch_out_;
            } else {
                for (long long i = 0; i < n_; ++i) scratch_in_[i] = in[sw[i]];
                Eigen::Map<const RowMat> v(scratch_in_.data(), dA_ * dB_, rest);
                Eigen::Map<RowMat> r(scratch_out_.data(), dA_ * dB_, rest);
                r.noalias() = m * v;
                for (long long i = 0; i < n_; ++i) out[sw[i]] += scratch_out_[i];
            }
        }
    }

private:
    void build_swaps() {
        swaps_.assign(k_, {});
        // Slot 1 needs no index motion; slots j > 1 swap components b_1 and b_j.
        for (int j = 2; j <= k_; ++j) {
            std::vector<long long>& sw = swaps_[j - 1];
            sw.resize(n_);
            long long s1 = 1, sj = 1;
            for (int r = 0; r < k_ - 1; ++r) s1 *= dB_;
            for (int r = 0; r < k_ - j; ++r) sj *= dB_;
            for (long long i = 0; i < n_; ++i) {
                const long long b1 = (i / s1) % dB_;
                const long long bj = (i / sj) % dB_;
                sw[i] = i + (bj - b1) * s1 + (b1 - bj) * sj;
            }
        }
    }

    int dA_, dB_, k_;
    long long n_ = 0;
    CMatrix base_plain_, base_tb_;
    std::vector<bool> transposed_slot_;
    std::vector<std::vector<long long>> swaps_;
    mutable CVector scratch_in_, scratch_out_;
};

} // namespace extk
