#pragma once

#include <cstdint>

#include "mimic/tensor.hpp"

// Raw dense kernels shared by the autodiff graph, the wavelet module and the
// metric embedder. Single-threaded and allocation-free on the hot paths;
// callers own all buffers.
namespace mimic::kernels {

struct ConvDims {
  std::int64_t batch, in_ch, in_h, in_w;
  std::int64_t out_ch, k_h, k_w;
  std::int64_t stride, pad;
  std::int64_t out_h, out_w;
};

// Validates shapes and computes output dims. Throws DimensionError naming the
// offending axis.
ConvDims conv2d_dims(const Tensor::Shape& input, const Tensor::Shape& kernel,
                     const Tensor::Shape& bias, std::int64_t stride, std::int64_t pad);

// Cross-correlation: out[b,f,y,x] = bias[f] + sum_{c,ky,kx} in[...] * k[f,c,ky,kx].
void conv2d_forward(const ConvDims& d, const double* in, const double* kernel, const double* bias,
                    double* out);

// Accumulates (+=) into the gradient buffers; pass nullptr to skip one.
void conv2d_backward(const ConvDims& d, const double* in, const double* kernel,
                     const double* grad_out, double* grad_in, double* grad_kernel,
                     double* grad_bias);

void upsample_nearest_forward(std::int64_t planes, std::int64_t h, std::int64_t w,
                              std::int64_t factor, const double* in, double* out);
void upsample_nearest_backward(std::int64_t planes, std::int64_t h, std::int64_t w,
                               std::int64_t factor, const double* grad_out, double* grad_in);

// 2x2 block mean; h and w must be even. Used by dataset generation.
void block_mean_down2(std::int64_t planes, std::int64_t h, std::int64_t w, const double* in,
                      double* out);

// One orthonormal Haar analysis step on a single h x w plane. The four output
// planes are each (h/2) x (w/2), laid out by the caller.
void haar_plane_forward(std::int64_t h, std::int64_t w, const double* in, double* ll, double* lh,
                        double* hl, double* hh);
// Exact inverse of haar_plane_forward.
void haar_plane_inverse(std::int64_t h, std::int64_t w, const double* ll, const double* lh,
                        const double* hl, const double* hh, double* out);

}  // namespace mimic::kernels
