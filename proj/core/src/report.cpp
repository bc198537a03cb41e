#include "cellsim/report.hpp"

#include <fstream>
#include <sstream>

#include "cellsim/text.hpp"
#include "cellsim/version.hpp"

namespace cellsim {

namespace {

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot write '" + path.string() + "'");
  return file;
}

void finish_write(std::ofstream& file, const std::filesystem::path& path) {
  file.flush();
  if (!file) throw std::runtime_error("write failed for '" + path.string() + "'");
}

}  // namespace

void write_results_csv(const std::filesystem::path& path,
                       const std::vector<SweepPoint>& points) {
  std::ofstream file = open_for_write(path);
  file << "swept_value,policy,sigma_s_dB,mean_rate,mean_rate_se,tx_capacity,"
          "cell_edge_mean,denial_fraction,n_trials\n";
  for (const SweepPoint& p : points) {
    file << format_double(p.swept_value) << ',' << policy_name(p.policy) << ','
         << format_double(p.sigma_s_dB) << ',' << format_double(p.stats.mean_rate) << ','
         << format_double(p.stats.mean_rate_se) << ','
         << format_double(p.stats.tx_capacity) << ','
         << format_double(p.stats.cell_edge_mean) << ','
         << format_double(p.stats.denial_fraction) << ',' << p.n_completed << '\n';
  }
  finish_write(file, path);
}

void write_ccdf_csv(const std::filesystem::path& path,
                    const std::vector<SweepPoint>& points) {
  std::ofstream file = open_for_write(path);
  file << "policy,K_over_M,r,ccdf\n";
  for (const SweepPoint& p : points) {
    for (const CcdfPoint& c : p.stats.ccdf) {
      file << policy_name(p.policy) << ',' << format_double(p.K_over_M) << ','
           << format_double(c.r) << ',' << format_double(c.prob) << '\n';
    }
  }
  finish_write(file, path);
}

void write_snapshot_csv(const std::filesystem::path& path, const NetworkRealization& net,
                        const Assignment& assignment) {
  std::ofstream file = open_for_write(path);
  file << "kind,index,x,y,serving\n";
  for (std::size_t i = 0; i < net.base_stations.size(); ++i) {
    const Vec2& p = net.base_stations[i];
    file << "bs," << i + 1 << ',' << format_double(p.x) << ',' << format_double(p.y)
         << ",\n";
  }
  for (std::size_t j = 0; j < net.mobiles.size(); ++j) {
    const Vec2& p = net.mobiles[j];
    file << "mobile," << j + 1 << ',' << format_double(p.x) << ','
         << format_double(p.y) << ',' << assignment.serving_station(j) + 1 << '\n';
  }
  finish_write(file, path);
}

std::uint64_t fnv1a64(const void* data, std::size_t size) {
  const unsigned char* bytes = static_cast<const unsigned char*>(data);
  std::uint64_t hash = 0xCBF29CE484222325ULL;
  for (std::size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

void write_manifest(const std::filesystem::path& path, const std::string& subcommand,
                    const ExperimentConfig& cfg,
                    const std::vector<std::filesystem::path>& outputs) {
  std::ofstream file = open_for_write(path);
  file << "manifest_format = 1\n";
  file << "version = " << kVersion << "\n";
  file << "subcommand = " << subcommand << "\n";
  for (const auto& [key, value] : config_items(cfg)) {
    file << "config." << key << " = " << value << "\n";
  }
  for (const std::filesystem::path& out : outputs) {
    std::ifstream in(out, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read back '" + out.string() + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    const std::string bytes = buffer.str();
    const std::string name = out.filename().string();
    file << "output." << name << ".bytes = " << bytes.size() << "\n";
    file << "output." << name << ".fnv1a64 = "
         << format_u64_hex(fnv1a64(bytes.data(), bytes.size())) << "\n";
  }
  finish_write(file, path);
}

}  // namespace cellsim
