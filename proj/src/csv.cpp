#include "fracwave/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace fracwave::csv {

std::string g17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string metadata_block(const Metadata& meta) {
  std::string out;
  for (const auto& [k, v] : meta) out += "# " + k + "=" + v + "\n";
  return out;
}

std::string dispersion_csv(const Metadata& meta,
                           const std::vector<DispersionPoint>& points,
                           const PowerLawFit* fit,
                           const std::string& fit_error) {
  std::string out = metadata_block(meta);
  out += "omega,k_re,k_im,alpha,phase_speed\n";
  for (const auto& p : points)
    out += g17(p.omega) + "," + g17(p.k.real()) + "," + g17(p.k.imag()) + "," +
           g17(p.alpha) + "," + g17(p.phase_speed) + "\n";
  if (fit) {
    out += "# fit.alpha0_hat=" + g17(fit->alpha0_hat) + "\n";
    out += "# fit.y_hat=" + g17(fit->y_hat) + "\n";
    out += "# fit.r2=" + g17(fit->r2) + "\n";
  } else {
    out += "# fit.error=" + fit_error + "\n";
  }
  return out;
}

std::string traces_csv(const Metadata& meta, const ProbeTraces& traces) {
  std::string out = metadata_block(meta);
  out += "t";
  for (std::size_t i = 0; i < traces.probes.size(); ++i) {
    const std::string tag = std::to_string(i);
    out += ",probe" + tag + "_re,probe" + tag + "_im";
  }
  out += "\n";
  const std::size_t samples = traces.data.empty() ? 0 : traces.data[0].size();
  for (std::size_t k = 0; k < samples; ++k) {
    out += g17(static_cast<double>(k) * traces.dt);
    for (const auto& tr : traces.data)
      out += "," + g17(tr[k].real()) + "," + g17(tr[k].imag());
    out += "\n";
  }
  return out;
}

std::string burgers_csv(const Metadata& meta, const BurgersRun& run) {
  std::string out = metadata_block(meta);
  for (std::size_t i = 0; i < run.times.size(); ++i)
    out += "# snapshot" + std::to_string(i) + ".t=" + g17(run.times[i]) + "\n";
  out += "x";
  for (std::size_t i = 0; i < run.times.size(); ++i) {
    const std::string tag = std::to_string(i);
    out += ",p" + tag + "_re,p" + tag + "_im";
  }
  out += "\n";
  const std::size_t n = run.snapshots.empty() ? 0 : run.snapshots[0].size();
  for (std::size_t j = 0; j < n; ++j) {
    out += g17(static_cast<double>(j) * run.h);
    for (const auto& snap : run.snapshots)
      out += "," + g17(snap[j].real()) + "," + g17(snap[j].imag());
    out += "\n";
  }
  return out;
}

std::string experiment_csv(const Metadata& meta, const ExperimentResult& res) {
  std::string out = metadata_block(meta);
  out += "# dt=" + g17(res.dt) + "\n";
  out += "# dx=" + g17(res.dx) + "\n";
  out += "# arrival1=" + g17(res.arrival1) + "\n";
  out += "# arrival2=" + g17(res.arrival2) + "\n";
  out += "# window_len=" + g17(res.window_len) + "\n";
  out += "# taper_frac=" + g17(res.taper_frac) + "\n";
  out += "# band_lo=" + g17(res.band_lo) + "\n";
  out += "# band_hi=" + g17(res.band_hi) + "\n";
  out += "omega,alpha_measured,alpha_predicted\n";
  for (std::size_t i = 0; i < res.omega.size(); ++i)
    out += g17(res.omega[i]) + "," + g17(res.alpha_measured[i]) + "," +
           g17(res.alpha_predicted[i]) + "\n";
  out += "# fit.alpha0_hat=" + g17(res.fit.alpha0_hat) + "\n";
  out += "# fit.y_hat=" + g17(res.fit.y_hat) + "\n";
  out += "# fit.r2=" + g17(res.fit.r2) + "\n";
  out += "# max_dev_mid=" + g17(res.max_dev_mid) + "\n";
  return out;
}

std::string sweep_csv(const Metadata& meta, const std::vector<SweepRow>& rows) {
  std::string out = metadata_block(meta);
  out +=
      "model,y,alpha0,ok,y_hat,alpha0_hat,r2,band_lo,band_hi,max_dev_mid,"
      "error\n";
  for (const auto& r : rows) {
    out += r.model + "," + g17(r.y) + "," + g17(r.alpha0) + "," +
           (r.ok ? "1" : "0") + "," + g17(r.y_hat) + "," + g17(r.alpha0_hat) +
           "," + g17(r.r2) + "," + g17(r.band_lo) + "," + g17(r.band_hi) +
           "," + g17(r.max_dev_mid) + ",\"" + r.error + "\"\n";
  }
  return out;
}

std::string matrix_csv(const Metadata& meta, const std::vector<double>& m,
                       std::size_t n) {
  std::string out = metadata_block(meta);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (j) out += ",";
      out += g17(m[i * n + j]);
    }
    out += "\n";
  }
  return out;
}

std::string report_csv(const Metadata& meta,
                       const std::vector<std::pair<std::string, double>>& rows) {
  std::string out = metadata_block(meta);
  out += "metric,value\n";
  for (const auto& [k, v] : rows) out += k + "," + g17(v) + "\n";
  return out;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace fracwave::csv
