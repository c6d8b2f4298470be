#include "pfs/snapshot.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace pfs {

namespace {

constexpr char kMagic[8] = {'P', 'F', 'S', 'N', 'A', 'P', '0', '1'};

template <typename T>
void put(std::ofstream& os, T value) {
  os.write(reinterpret_cast<const char*>(&value), sizeof value);
}

template <typename T>
T get(std::ifstream& is) {
  T value{};
  is.read(reinterpret_cast<char*>(&value), sizeof value);
  if (!is) throw std::runtime_error("snapshot: truncated file");
  return value;
}

}  // namespace

void write_snapshot(const std::string& path, const Trajectory& traj,
                    const BoxDomain& domain) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw std::runtime_error("snapshot: cannot open " + path);
  os.write(kMagic, sizeof kMagic);
  put<std::uint32_t>(os, 1);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(domain.dim));
  put<double>(os, domain.lengths[0]);
  put<double>(os, domain.lengths[1]);
  put<std::uint32_t>(os, static_cast<std::uint32_t>(traj.meta.n_modes[0]));
  put<std::uint32_t>(os, static_cast<std::uint32_t>(traj.meta.n_modes[1]));
  put<std::uint32_t>(os, 1);  // mode ordering id
  put<std::uint32_t>(os, traj.meta.scheme == "imex_cn" ? 1u : 0u);
  put<double>(os, traj.dt);
  put<double>(os, traj.meta.alpha);
  put<double>(os, traj.meta.beta);
  put<double>(os, traj.meta.eps);
  const std::uint64_t n_states = traj.states.size();
  const std::uint64_t n_coeffs =
      n_states ? static_cast<std::uint64_t>(traj.states.front().w.size()) : 0;
  for (const State& s : traj.states)
    if (static_cast<std::uint64_t>(s.w.size()) != n_coeffs ||
        static_cast<std::uint64_t>(s.v.size()) != n_coeffs ||
        static_cast<std::uint64_t>(s.u.size()) != n_coeffs)
      throw std::invalid_argument("snapshot: ragged coefficient blocks");
  put<std::uint64_t>(os, n_states);
  put<std::uint64_t>(os, n_coeffs);
  for (const State& s : traj.states) {
    put<double>(os, s.t);
    os.write(reinterpret_cast<const char*>(s.w.data()),
             static_cast<std::streamsize>(n_coeffs * sizeof(double)));
    os.write(reinterpret_cast<const char*>(s.v.data()),
             static_cast<std::streamsize>(n_coeffs * sizeof(double)));
    os.write(reinterpret_cast<const char*>(s.u.data()),
             static_cast<std::streamsize>(n_coeffs * sizeof(double)));
  }
  if (!os) throw std::runtime_error("snapshot: write failed for " + path);
}

Snapshot read_snapshot(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("snapshot: cannot open " + path);
  char magic[8];
  is.read(magic, sizeof magic);
  if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0)
    throw std::runtime_error("snapshot: bad magic in " + path);
  const auto version = get<std::uint32_t>(is);
  if (version != 1) throw std::runtime_error("snapshot: unsupported version");

  Snapshot snap;
  snap.header.dim = static_cast<int>(get<std::uint32_t>(is));
  snap.header.length_x = get<double>(is);
  snap.header.length_y = get<double>(is);
  snap.header.n_modes_x = static_cast<int>(get<std::uint32_t>(is));
  snap.header.n_modes_y = static_cast<int>(get<std::uint32_t>(is));
  snap.header.mode_ordering = static_cast<int>(get<std::uint32_t>(is));
  snap.header.scheme = static_cast<int>(get<std::uint32_t>(is));
  snap.header.dt = get<double>(is);
  snap.header.alpha = get<double>(is);
  snap.header.beta = get<double>(is);
  snap.header.eps = get<double>(is);

  const auto n_states = get<std::uint64_t>(is);
  const auto n_coeffs = get<std::uint64_t>(is);
  snap.trajectory.dt = snap.header.dt;
  snap.trajectory.meta.n_modes = {snap.header.n_modes_x, snap.header.n_modes_y};
  snap.trajectory.meta.scheme =
      snap.header.scheme == 1 ? "imex_cn" : "imex_euler";
  snap.trajectory.meta.alpha = snap.header.alpha;
  snap.trajectory.meta.beta = snap.header.beta;
  snap.trajectory.meta.eps = snap.header.eps;
  snap.trajectory.states.resize(n_states);
  for (std::uint64_t k = 0; k < n_states; ++k) {
    State& s = snap.trajectory.states[k];
    s.t = get<double>(is);
    s.w.resize(static_cast<Eigen::Index>(n_coeffs));
    s.v.resize(static_cast<Eigen::Index>(n_coeffs));
    s.u.resize(static_cast<Eigen::Index>(n_coeffs));
    for (auto* block : {&s.w, &s.v, &s.u}) {
      is.read(reinterpret_cast<char*>(block->data()),
              static_cast<std::streamsize>(n_coeffs * sizeof(double)));
      if (!is) throw std::runtime_error("snapshot: truncated file");
    }
  }
  return snap;
}

}  // namespace pfs
