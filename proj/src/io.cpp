#include "scatter/io.hpp"

#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <numbers>

#include <nlohmann/json.hpp>

namespace scatter::io {

const char* kVersion = "scatter 1.0.0";

namespace {

void atomic_write(const std::string& path, const std::string& payload) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + tmp);
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::runtime_error("cannot rename " + tmp + " -> " + path);
}

std::string header(const std::string& config_hash) {
  return std::string("# ") + kVersion + "\n# config " + config_hash + "\n";
}

void append_le(std::string& s, const void* p, size_t n) {
  s.append(static_cast<const char*>(p), n);
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_sweep_csv(const std::string& path, const duality::PhaseCurve& curve,
                     const std::string& config_hash) {
  std::string out = header(config_hash);
  out += "lambda,phi,psi,n_retained_eigs,min_eigphase,skipped\n";
  for (const auto& s : curve.samples) {
    out += format_double(s.lambda) + "," + format_double(s.phi) + "," +
           format_double(s.psi) + "," + std::to_string(s.n_retained) + "," +
           format_double(s.extremal_eigphase) + "," +
           (s.skipped ? "1" : "0") + "\n";
  }
  atomic_write(path, out);
}

void write_detections_json(const std::string& path,
                           const std::vector<duality::Detection>& detections,
                           const std::string& config_hash) {
  nlohmann::ordered_json root;
  root["version"] = kVersion;
  root["config_hash"] = config_hash;
  auto arr = nlohmann::ordered_json::array();
  for (const auto& d : detections) {
    nlohmann::ordered_json j;
    j["lambda_hat"] = d.lambda_hat;
    j["bracket_lo"] = d.bracket_lo;
    j["bracket_hi"] = d.bracket_hi;
    j["sigma"] = d.sigma;
    j["side"] = d.side;
    j["phase_floor_at_dip"] = d.phase_floor_at_dip;
    j["multiplicity_estimate"] = d.multiplicity_estimate;
    arr.push_back(j);
  }
  root["detections"] = arr;
  atomic_write(path, root.dump(2) + "\n");
}

void write_residual_csv(const std::string& path,
                        const std::vector<double>& alphas,
                        const std::vector<double>& surrogate,
                        const std::vector<double>& data,
                        const std::string& config_hash) {
  std::string out = header(config_hash);
  out += "alpha,surrogate_residual,data_residual\n";
  for (size_t i = 0; i < alphas.size(); ++i) {
    out += format_double(alphas[i]) + "," + format_double(surrogate[i]) + ",";
    out += (i < data.size() ? format_double(data[i]) : std::string()) + "\n";
  }
  atomic_write(path, out);
}

void write_density_table(const std::string& path,
                         const std::vector<double>& alphas,
                         const std::vector<potentials::DensityVec>& psis,
                         const std::string& config_hash) {
  std::string out = header(config_hash);
  out += "alpha,node,re,im\n";
  for (size_t a = 0; a < alphas.size(); ++a)
    for (int i = 0; i < psis[a].size(); ++i)
      out += format_double(alphas[a]) + "," + std::to_string(i) + "," +
             format_double(psis[a][i].real()) + "," +
             format_double(psis[a][i].imag()) + "\n";
  atomic_write(path, out);
}

void write_sweep_svg(const std::string& path, const duality::PhaseCurve& curve,
                     const std::vector<duality::Detection>& detections) {
  const double w = 800, h = 400, pad = 40;
  double lo = 0, hi = 1;
  if (!curve.samples.empty()) {
    lo = curve.samples.front().lambda;
    hi = curve.samples.back().lambda;
  }
  if (hi <= lo) hi = lo + 1;
  auto xm = [&](double l) { return pad + (l - lo) / (hi - lo) * (w - 2 * pad); };
  auto ym = [&](double p) {
    return h - pad - p / (2.0 * std::numbers::pi) * (h - 2 * pad);
  };
  std::string out =
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\">\n"
      "<rect width=\"800\" height=\"400\" fill=\"white\"/>\n";
  std::string pts;
  auto flush = [&]() {
    if (!pts.empty())
      out += "<polyline fill=\"none\" stroke=\"black\" points=\"" + pts + "\"/>\n";
    pts.clear();
  };
  for (const auto& s : curve.samples) {
    if (s.skipped) { flush(); continue; }
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f ", xm(s.lambda), ym(s.psi));
    pts += buf;
  }
  flush();
  for (const auto& d : detections) {
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.2f\" y1=\"%.0f\" x2=\"%.2f\" y2=\"%.0f\" "
                  "stroke=\"red\"/>\n",
                  xm(d.lambda_hat), pad, xm(d.lambda_hat), h - pad);
    out += buf;
  }
  out += "</svg>\n";
  atomic_write(path, out);
}

std::string cache_file_name(const std::string& config_hash, double lambda,
                            nearfield::Route route) {
  uint64_t bits;
  std::memcpy(&bits, &lambda, sizeof bits);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%s_%016llx_%c.nfd", config_hash.c_str(),
                static_cast<unsigned long long>(bits),
                route == nearfield::Route::Direct ? 'd' : 'f');
  return buf;
}

void write_matrix_cache(const std::string& path,
                        const nearfield::NearFieldMatrix& nf) {
  std::string out = "NFD1";
  const uint32_t rows = static_cast<uint32_t>(nf.F.rows());
  const uint32_t cols = static_cast<uint32_t>(nf.F.cols());
  const uint8_t tag = nf.route == nearfield::Route::Direct ? 0 : 1;
  append_le(out, &rows, 4);
  append_le(out, &cols, 4);
  append_le(out, &nf.lambda, 8);
  append_le(out, &tag, 1);
  for (uint32_t i = 0; i < rows; ++i)
    for (uint32_t j = 0; j < cols; ++j) {
      double re = nf.F(i, j).real(), im = nf.F(i, j).imag();
      append_le(out, &re, 8);
      append_le(out, &im, 8);
    }
  atomic_write(path, out);
}

std::optional<nearfield::NearFieldMatrix> read_matrix_cache(
    const std::string& path, double lambda, nearfield::Route route) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  char magic[4];
  uint32_t rows = 0, cols = 0;
  double lam = 0;
  uint8_t tag = 0;
  in.read(magic, 4);
  in.read(reinterpret_cast<char*>(&rows), 4);
  in.read(reinterpret_cast<char*>(&cols), 4);
  in.read(reinterpret_cast<char*>(&lam), 8);
  in.read(reinterpret_cast<char*>(&tag), 1);
  if (!in || std::memcmp(magic, "NFD1", 4) != 0) return std::nullopt;
  if (lam != lambda || tag != (route == nearfield::Route::Direct ? 0 : 1))
    return std::nullopt;
  nearfield::NearFieldMatrix nf;
  nf.F.resize(rows, cols);
  nf.lambda = lam;
  nf.route = route;
  for (uint32_t i = 0; i < rows; ++i)
    for (uint32_t j = 0; j < cols; ++j) {
      double re, im;
      in.read(reinterpret_cast<char*>(&re), 8);
      in.read(reinterpret_cast<char*>(&im), 8);
      nf.F(i, j) = {re, im};
    }
  if (!in) return std::nullopt;
  return nf;
}

}  // namespace scatter::io
