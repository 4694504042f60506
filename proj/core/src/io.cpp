#include "nonunitary/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nonunitary {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string spec_hash(const ChainSpec& spec) {
  const std::string canonical = nlohmann::json(spec).dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canonical) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string metadata_header(const ChainSpec& spec) {
  std::ostringstream out;
  out << "# spec_hash: " << spec_hash(spec) << "\n";
  out << "# tool_version: " << kToolVersion << "\n";
  out << "# im_flag_tol: " << format_double(kImFlagTol) << "\n";
  out << "# ep_cond_threshold: " << format_double(kEpCondThreshold) << "\n";
  return out.str();
}

std::string entropy_csv(const ChainSpec& spec, const EntropyCurve& curve) {
  std::ostringstream out;
  out << metadata_header(spec);
  out << "# renyi_n: " << format_double(curve.renyi_n) << "\n";
  out << "L_A,S,max_im,flag\n";
  for (const auto& s : curve.samples)
    out << s.cut_cells << ',' << format_double(s.value) << ',' << format_double(s.im_residue)
        << ',' << (s.flagged ? 1 : 0) << "\n";
  return out.str();
}

std::string energy_csv(const ChainSpec& spec, const std::vector<EnergyPoint>& points) {
  std::ostringstream out;
  out << metadata_header(spec);
  out << "L,E,overlap_cond,min_phase_rigidity\n";
  for (const auto& p : points)
    out << p.n_cells << ',' << format_double(p.energy) << ',' << format_double(p.overlap_cond)
        << ',' << format_double(p.min_phase_rigidity) << "\n";
  return out.str();
}

std::string fidelity_csv(const ChainSpec& spec, const FidelityCurve& curve) {
  std::ostringstream out;
  out << metadata_header(spec);
  out << "# eps: " << format_double(curve.eps) << "\n";
  out << "lambda,chi,re_F,im_F\n";
  for (std::size_t i = 0; i < curve.lambdas.size(); ++i)
    out << format_double(curve.lambdas[i]) << ',' << format_double(curve.chi[i]) << ','
        << format_double(curve.fidelity_raw[i].real()) << ','
        << format_double(curve.fidelity_raw[i].imag()) << "\n";
  return out.str();
}

std::string spectrum_csv(const ChainSpec& spec, const BiorthSystem& sys) {
  std::ostringstream out;
  out << metadata_header(spec);
  out << "# overlap_cond: " << format_double(sys.overlap_cond) << "\n";
  out << "n,re_E,im_E,phase_rigidity\n";
  for (Eigen::Index n = 0; n < sys.energies.size(); ++n)
    out << n << ',' << format_double(sys.energies[n].real()) << ','
        << format_double(sys.energies[n].imag()) << ','
        << format_double(sys.phase_rigidity[n]) << "\n";
  return out.str();
}

nlohmann::json fit_to_json(const FitResult& fit) {
  return nlohmann::json{{"coefficients", fit.coefficients},
                        {"v_fermi", fit.v_fermi},
                        {"residual_rms", fit.residual_rms},
                        {"n_points_used", fit.n_points_used},
                        {"n_excluded", fit.n_excluded},
                        {"window", fit.window}};
}

nlohmann::json entropy_to_json(const ChainSpec& spec, const EntropyCurve& curve) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& s : curve.samples)
    samples.push_back({{"L_A", s.cut_cells},
                       {"S", s.value},
                       {"max_im", s.im_residue},
                       {"flag", s.flagged}});
  return nlohmann::json{{"spec_hash", spec_hash(spec)},
                        {"tool_version", kToolVersion},
                        {"renyi_n", curve.renyi_n},
                        {"total_cells", curve.total_cells},
                        {"boundary", boundary_name(curve.boundary)},
                        {"max_im", curve.max_im},
                        {"samples", samples}};
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << contents;
  if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace nonunitary
