#include "mimic/kernels.hpp"

#include <algorithm>

namespace mimic::kernels {

ConvDims conv2d_dims(const Tensor::Shape& input, const Tensor::Shape& kernel,
                     const Tensor::Shape& bias, std::int64_t stride, std::int64_t pad) {
  if (input.size() != 4) {
    throw DimensionError("conv2d input must be rank 4 [B,C,H,W], got rank " +
                         std::to_string(input.size()));
  }
  if (kernel.size() != 4) {
    throw DimensionError("conv2d kernel must be rank 4 [F,C,kh,kw], got rank " +
                         std::to_string(kernel.size()));
  }
  if (bias.size() != 1) {
    throw DimensionError("conv2d bias must be rank 1 [F], got rank " + std::to_string(bias.size()));
  }
  if (stride < 1) throw ConfigError("conv2d stride must be >= 1, got " + std::to_string(stride));
  if (pad < 0) throw ConfigError("conv2d pad must be >= 0, got " + std::to_string(pad));

  ConvDims d{};
  d.batch = input[0];
  d.in_ch = input[1];
  d.in_h = input[2];
  d.in_w = input[3];
  d.out_ch = kernel[0];
  d.k_h = kernel[2];
  d.k_w = kernel[3];
  d.stride = stride;
  d.pad = pad;

  if (kernel[1] != d.in_ch) {
    throw DimensionError("conv2d channel axis mismatch: input axis 1 is " + std::to_string(d.in_ch) +
                         " but kernel axis 1 is " + std::to_string(kernel[1]));
  }
  if (bias[0] != d.out_ch) {
    throw DimensionError("conv2d bias axis 0 is " + std::to_string(bias[0]) +
                         " but kernel axis 0 is " + std::to_string(d.out_ch));
  }
  if (d.k_h > d.in_h + 2 * pad) {
    throw DimensionError("conv2d kernel axis 2 (" + std::to_string(d.k_h) +
                         ") exceeds padded input axis 2 (" + std::to_string(d.in_h + 2 * pad) + ")");
  }
  if (d.k_w > d.in_w + 2 * pad) {
    throw DimensionError("conv2d kernel axis 3 (" + std::to_string(d.k_w) +
                         ") exceeds padded input axis 3 (" + std::to_string(d.in_w + 2 * pad) + ")");
  }
  d.out_h = (d.in_h + 2 * pad - d.k_h) / stride + 1;
  d.out_w = (d.in_w + 2 * pad - d.k_w) / stride + 1;
  return d;
}

namespace {

// Valid output range [lo, hi) for one kernel tap so that the input index
// iy = oy*stride - pad + ky stays inside [0, in).
inline void tap_range(std::int64_t k, std::int64_t stride, std::int64_t pad, std::int64_t in,
                      std::int64_t out, std::int64_t& lo, std::int64_t& hi) {
  // smallest o with o*stride - pad + k >= 0
  std::int64_t lo_num = pad - k;
  lo = lo_num <= 0 ? 0 : (lo_num + stride - 1) / stride;
  // largest o with o*stride - pad + k <= in-1
  std::int64_t hi_num = in - 1 + pad - k;
  hi = hi_num < 0 ? 0 : hi_num / stride + 1;
  lo = std::min(lo, out);
  hi = std::min(hi, out);
  if (hi < lo) hi = lo;
}

}  // namespace

void conv2d_forward(const ConvDims& d, const double* in, const double* kernel, const double* bias,
                    double* out) {
  const std::int64_t in_plane = d.in_h * d.in_w;
  const std::int64_t out_plane = d.out_h * d.out_w;
  for (std::int64_t b = 0; b < d.batch; ++b) {
    const double* in_b = in + b * d.in_ch * in_plane;
    double* out_b = out + b * d.out_ch * out_plane;
    for (std::int64_t f = 0; f < d.out_ch; ++f) {
      double* out_f = out_b + f * out_plane;
      const double bf = bias[f];
      for (std::int64_t i = 0; i < out_plane; ++i) out_f[i] = bf;
      for (std::int64_t c = 0; c < d.in_ch; ++c) {
        const double* in_c = in_b + c * in_plane;
        const double* k_fc = kernel + (f * d.in_ch + c) * d.k_h * d.k_w;
        for (std::int64_t ky = 0; ky < d.k_h; ++ky) {
          std::int64_t oy_lo, oy_hi;
          tap_range(ky, d.stride, d.pad, d.in_h, d.out_h, oy_lo, oy_hi);
          for (std::int64_t kx = 0; kx < d.k_w; ++kx) {
            const double w = k_fc[ky * d.k_w + kx];
            if (w == 0.0) continue;
            std::int64_t ox_lo, ox_hi;
            tap_range(kx, d.stride, d.pad, d.in_w, d.out_w, ox_lo, ox_hi);
            for (std::int64_t oy = oy_lo; oy < oy_hi; ++oy) {
              const std::int64_t iy = oy * d.stride - d.pad + ky;
              const double* in_row = in_c + iy * d.in_w - d.pad + kx;
              double* out_row = out_f + oy * d.out_w;
              if (d.stride == 1) {
                for (std::int64_t ox = ox_lo; ox < ox_hi; ++ox) {
                  out_row[ox] += w * in_row[ox];
                }
              } else {
                for (std::int64_t ox = ox_lo; ox < ox_hi; ++ox) {
                  out_row[ox] += w * in_row[ox * d.stride];
                }
              }
            }
          }
        }
      }
    }
  }
}

void conv2d_backward(const ConvDims& d, const double* in, const double* kernel,
                     const double* grad_out, double* grad_in, double* grad_kernel,
                     double* grad_bias) {
  const std::int64_t in_plane = d.in_h * d.in_w;
  const std::int64_t out_plane = d.out_h * d.out_w;
  for (std::int64_t b = 0; b < d.batch; ++b) {
    const double* in_b = in + b * d.in_ch * in_plane;
    const double* go_b = grad_out + b * d.out_ch * out_plane;
    double* gi_b = grad_in ? grad_in + b * d.in_ch * in_plane : nullptr;
    for (std::int64_t f = 0; f < d.out_ch; ++f) {
      const double* go_f = go_b + f * out_plane;
      if (grad_bias) {
        double acc = 0.0;
        for (std::int64_t i = 0; i < out_plane; ++i) acc += go_f[i];
        grad_bias[f] += acc;
      }
      for (std::int64_t c = 0; c < d.in_ch; ++c) {
        const double* in_c = in_b + c * in_plane;
        const double* k_fc = kernel + (f * d.in_ch + c) * d.k_h * d.k_w;
        double* gk_fc = grad_kernel ? grad_kernel + (f * d.in_ch + c) * d.k_h * d.k_w : nullptr;
        double* gi_c = gi_b ? gi_b + c * in_plane : nullptr;
        for (std::int64_t ky = 0; ky < d.k_h; ++ky) {
          std::int64_t oy_lo, oy_hi;
          tap_range(ky, d.stride, d.pad, d.in_h, d.out_h, oy_lo, oy_hi);
          for (std::int64_t kx = 0; kx < d.k_w; ++kx) {
            std::int64_t ox_lo, ox_hi;
            tap_range(kx, d.stride, d.pad, d.in_w, d.out_w, ox_lo, ox_hi);
            const double w = k_fc[ky * d.k_w + kx];
            double wacc = 0.0;
            for (std::int64_t oy = oy_lo; oy < oy_hi; ++oy) {
              const std::int64_t iy = oy * d.stride - d.pad + ky;
              const double* in_row = in_c + iy * d.in_w - d.pad + kx;
              const double* go_row = go_f + oy * d.out_w;
              double* gi_row = gi_c ? gi_c + iy * d.in_w - d.pad + kx : nullptr;
              if (d.stride == 1) {
                for (std::int64_t ox = ox_lo; ox < ox_hi; ++ox) {
                  wacc += in_row[ox] * go_row[ox];
                }
                if (gi_row) {
                  for (std::int64_t ox = ox_lo; ox < ox_hi; ++ox) {
                    gi_row[ox] += w * go_row[ox];
                  }
                }
              } else {
                for (std::int64_t ox = ox_lo; ox < ox_hi; ++ox) {
                  wacc += in_row[ox * d.stride] * go_row[ox];
                }
                if (gi_row) {
                  for (std::int64_t ox = ox_lo; ox < ox_hi; ++ox) {
                    gi_row[ox * d.stride] += w * go_row[ox];
                  }
                }
              }
            }
            if (gk_fc) gk_fc[ky * d.k_w + kx] += wacc;
          }
        }
      }
    }
  }
}

void upsample_nearest_forward(std::int64_t planes, std::int64_t h, std::int64_t w,
                              std::int64_t factor, const double* in, double* out) {
  const std::int64_t oh = h * factor, ow = w * factor;
  for (std::int64_t p = 0; p < planes; ++p) {
    const double* in_p = in + p * h * w;
    double* out_p = out + p * oh * ow;
    for (std::int64_t oy = 0; oy < oh; ++oy) {
      const double* in_row = in_p + (oy / factor) * w;
      double* out_row = out_p + oy * ow;
      for (std::int64_t ox = 0; ox < ow; ++ox) {
        out_row[ox] = in_row[ox / factor];
      }
    }
  }
}

void upsample_nearest_backward(std::int64_t planes, std::int64_t h, std::int64_t w,
                               std::int64_t factor, const double* grad_out, double* grad_in) {
  const std::int64_t oh = h * factor, ow = w * factor;
  for (std::int64_t p = 0; p < planes; ++p) {
    const double* go_p = grad_out + p * oh * ow;
    double* gi_p = grad_in + p * h * w;
    for (std::int64_t oy = 0; oy < oh; ++oy) {
      const double* go_row = go_p + oy * ow;
      double* gi_row = gi_p + (oy / factor) * w;
      for (std::int64_t ox = 0; ox < ow; ++ox) {
        gi_row[ox / factor] += go_row[ox];
      }
    }
  }
}

void block_mean_down2(std::int64_t planes, std::int64_t h, std::int64_t w, const double* in,
                      double* out) {
  const std::int64_t hh = h / 2, hw = w / 2;
  for (std::int64_t p = 0; p < planes; ++p) {
    const double* in_p = in + p * h * w;
    double* out_p = out + p * hh * hw;
    for (std::int64_t y = 0; y < hh; ++y) {
      const double* r0 = in_p + (2 * y) * w;
      const double* r1 = r0 + w;
      double* o = out_p + y * hw;
      for (std::int64_t x = 0; x < hw; ++x) {
        o[x] = 0.25 * (r0[2 * x] + r0[2 * x + 1] + r1[2 * x] + r1[2 * x + 1]);
      }
    }
  }
}

void haar_plane_forward(std::int64_t h, std::int64_t w, const double* in, double* ll, double* lh,
                        double* hl, double* hh) {
  const std::int64_t hh_rows = h / 2, hw = w / 2;
  for (std::int64_t y = 0; y < hh_rows; ++y) {
    const double* r0 = in + (2 * y) * w;
    const double* r1 = r0 + w;
    for (std::int64_t x = 0; x < hw; ++x) {
      const double a = r0[2 * x], b = r0[2 * x + 1];
      const double c = r1[2 * x], d = r1[2 * x + 1];
      const std::int64_t i = y * hw + x;
      ll[i] = 0.5 * (a + b + c + d);
      lh[i] = 0.5 * (a + b - c - d);
      hl[i] = 0.5 * (a - b + c - d);
      hh[i] = 0.5 * (a - b - c + d);
    }
  }
}

void haar_plane_inverse(std::int64_t h, std::int64_t w, const double* ll, const double* lh,
                        const double* hl, const double* hh, double* out) {
  const std::int64_t hh_rows = h / 2, hw = w / 2;
  for (std::int64_t y = 0; y < hh_rows; ++y) {
    double* r0 = out + (2 * y) * w;
    double* r1 = r0 + w;
    for (std::int64_t x = 0; x < hw; ++x) {
      const std::int64_t i = y * hw + x;
      const double s = ll[i], v = lh[i], u = hl[i], q = hh[i];
      r0[2 * x] = 0.5 * (s + v + u + q);
      r0[2 * x + 1] = 0.5 * (s + v - u - q);
      r1[2 * x] = 0.5 * (s - v + u - q);
      r1[2 * x + 1] = 0.5 * (s - v - u + q);
    }
  }
}

}  // namespace mimic::kernels
