#include "longwave/modulation.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "json.hpp"
#include "longwave/io.hpp"
#include "longwave/kdv.hpp"
#include "longwave/linkdv.hpp"
#include "longwave/transport.hpp"
#include "longwave/wave3.hpp"

namespace lw {

ModulationState::ModulationState(double eps_, double T_, const Grid& g)
    : eps(eps_), T(T_), U(g), V(g), F(g), G(g), Pminus(g), Pplus(g), phiMinus(g), phiPlus(g),
      W3(g), W3dot(g), W3dotAnti(g), w3_valid(false) {}

ModulationParams::ModulationParams(double eps_, double T_end_, Field U0_, Field V0_)
    : eps(eps_), T_end(T_end_), U0(std::move(U0_)), V0(std::move(V0_)) {
  check_same_grid(U0, V0);
}

const Grid& ModulationSolution::grid() const {
  if (U.fields.empty()) throw std::logic_error("empty modulation solution");
  return U.fields.front().grid;
}

double ModulationSolution::T_end() const {
  if (U.times.empty()) throw std::logic_error("empty modulation solution");
  return U.t_end();
}

ModulationState ModulationSolution::at(double T) const {
  ModulationState st(eps, T, grid());
  st.U = U.at(T);
  st.V = V.at(T);
  st.F = F.at(T);
  st.G = G.at(T);
  st.Pminus = Pminus.at(T);
  st.Pplus = Pplus.at(T);
  st.phiMinus = phiMinus.at(T);
  st.phiPlus = phiPlus.at(T);
  if (has_w3) {
    st.W3 = W3.at(T);
    st.W3dot = W3dot.at(T);
    st.W3dotAnti = W3dotAnti.at(T);
    st.w3_valid = true;
  }
  return st;
}

ModulationSolution solve_modulation(const ModulationParams& p) {
  if (!(p.eps > 0.0 && p.eps < 1.0)) throw std::invalid_argument("eps must lie in (0,1)");
  if (!(p.T_end >= 0.0)) throw std::invalid_argument("T_end must be non-negative");
  const Grid& g = p.U0.grid;
  auto check_seed = [&](const std::optional<Field>& f, const char* who) {
    if (f && !(f->grid == g))
      throw std::invalid_argument(std::string(who) + " seed lives on a different grid");
  };
  check_seed(p.F0, "F0");
  check_seed(p.G0, "G0");
  check_seed(p.phiMinus0, "phiMinus0");
  check_seed(p.phiPlus0, "phiPlus0");

  ModulationSolution sol;
  sol.eps = p.eps;
  sol.dt_T = p.dt_T;
  sol.dtau_transport = p.dtau_transport;
  sol.dtau_wave = p.dtau_wave;

  // The hierarchy is strictly one-way, so it runs staged: the KdV profiles
  // feed the transport pair, both feed the driven linearized KdV pair, and
  // all of them drive the third-order wave equation.
  sol.U = kdv_evolve(p.U0, Chirality::right, p.T_end, p.dt_T, p.snap_T);
  sol.V = kdv_evolve(p.V0, Chirality::left, p.T_end, p.dt_T, p.snap_T);

  const double tau_end = p.T_end / (p.eps * p.eps);
  TransportResult tr =
      transport_evolve(sol.U, sol.V, p.eps, tau_end, p.dtau_transport, p.snap_tau,
                       p.phiMinus0 ? &*p.phiMinus0 : nullptr, p.phiPlus0 ? &*p.phiPlus0 : nullptr);
  sol.Pminus = std::move(tr.Pminus);
  sol.Pplus = std::move(tr.Pplus);
  sol.phiMinus = std::move(tr.phiMinus);
  sol.phiPlus = std::move(tr.phiPlus);

  LinKdvResult lk = linkdv_evolve(p.F0 ? *p.F0 : Field(g), p.G0 ? *p.G0 : Field(g), sol.U, sol.V,
                                  sol.phiMinus, sol.phiPlus, p.T_end, p.dt_T, p.snap_T);
  sol.F = std::move(lk.F);
  sol.G = std::move(lk.G);

  if (p.include_w3) {
    const double snap_wave = p.snap_tau_wave > 0.0 ? p.snap_tau_wave : p.snap_tau;
    Wave3Result w3 = w3_evolve(sol.U, sol.V, sol.F, sol.G, sol.phiMinus, sol.phiPlus, p.eps,
                               tau_end, p.dtau_wave, snap_wave);
    sol.W3 = std::move(w3.W3);
    sol.W3dot = std::move(w3.W3dot);
    sol.W3dotAnti = std::move(w3.W3dotAnti);
    sol.has_w3 = true;
  } else {
    // Keep the channels well-formed (a single zero record at T=0) without
    // claiming coverage; at(T>0) would report an interpolation gap.
    sol.W3.push(0.0, Field(g));
    sol.W3dot.push(0.0, Field(g));
    sol.W3dotAnti.push(0.0, Field(g));
  }
  return sol;
}

namespace {

constexpr const char* kChannelNames[] = {"U",        "V",        "F",       "G",
                                         "Pminus",   "Pplus",    "phiMinus", "phiPlus",
                                         "W3",       "W3dot",    "W3dotAnti"};

std::vector<FieldTrajectory*> channel_list(ModulationSolution& sol) {
  return {&sol.U,        &sol.V,     &sol.F,        &sol.G,     &sol.Pminus, &sol.Pplus,
          &sol.phiMinus, &sol.phiPlus, &sol.W3,     &sol.W3dot, &sol.W3dotAnti};
}

std::vector<const FieldTrajectory*> channel_list(const ModulationSolution& sol) {
  return {&sol.U,        &sol.V,     &sol.F,        &sol.G,     &sol.Pminus, &sol.Pplus,
          &sol.phiMinus, &sol.phiPlus, &sol.W3,     &sol.W3dot, &sol.W3dotAnti};
}

}  // namespace

void save_solution(const std::string& dir, const ModulationSolution& sol) {
  namespace fs = std::filesystem;
  fs::create_directories(dir);

  nlohmann::json man;
  man["format"] = "longwave-solution";
  man["version"] = 1;
  man["eps"] = sol.eps;
  man["has_w3"] = sol.has_w3;
  man["scheme"] = "integrating-factor rk4 (dispersive stages) + simpson duhamel (wave stages)";
  man["dt"] = {{"dt_T", sol.dt_T},
               {"dtau_transport", sol.dtau_transport},
               {"dtau_wave", sol.dtau_wave}};
  const Grid& g = sol.grid();
  man["grid"] = {{"n", g.n}, {"length", g.length}, {"origin", g.origin}};

  auto chans = channel_list(sol);
  for (std::size_t c = 0; c < chans.size(); ++c) {
    const FieldTrajectory& tr = *chans[c];
    nlohmann::json ch;
    ch["times"] = tr.times;
    std::vector<std::string> files;
    files.reserve(tr.fields.size());
    for (std::size_t i = 0; i < tr.fields.size(); ++i) {
      char name[64];
      std::snprintf(name, sizeof name, "%s_%06zu.bin", kChannelNames[c], i);
      write_field_binary((fs::path(dir) / name).string(), tr.fields[i]);
      files.emplace_back(name);
    }
    ch["files"] = std::move(files);
    man["channels"][kChannelNames[c]] = std::move(ch);
  }

  const fs::path man_path = fs::path(dir) / "manifest.json";
  std::ofstream out(man_path);
  if (!out) throw std::runtime_error("cannot write " + man_path.string());
  out << man.dump(2) << "\n";
  if (!out.good()) throw std::runtime_error("short write to " + man_path.string());
}

ModulationSolution load_solution(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path man_path = fs::path(dir) / "manifest.json";
  std::ifstream in(man_path);
  if (!in) throw std::runtime_error("cannot open " + man_path.string());
  nlohmann::json man = nlohmann::json::parse(in);
  if (man.value("format", std::string{}) != "longwave-solution")
    throw std::runtime_error(dir + " is not a solution directory");

  ModulationSolution sol;
  sol.eps = man.at("eps").get<double>();
  sol.has_w3 = man.value("has_w3", false);
  const auto& dt = man.at("dt");
  sol.dt_T = dt.value("dt_T", 0.0);
  sol.dtau_transport = dt.value("dtau_transport", 0.0);
  sol.dtau_wave = dt.value("dtau_wave", 0.0);

  auto chans = channel_list(sol);
  for (std::size_t c = 0; c < chans.size(); ++c) {
    const auto& ch = man.at("channels").at(kChannelNames[c]);
    const auto& times = ch.at("times");
    const auto& files = ch.at("files");
    if (times.size() != files.size())
      throw std::runtime_error(std::string("manifest channel ") + kChannelNames[c] +
                               ": times/files length mismatch");
    for (std::size_t i = 0; i < times.size(); ++i)
      chans[c]->push(times[i].get<double>(),
                     read_field_binary((fs::path(dir) / files[i].get<std::string>()).string()));
  }

  const auto& gj = man.at("grid");
  const Grid expect{gj.at("n").get<std::size_t>(), gj.at("length").get<double>(),
                    gj.at("origin").get<double>()};
  if (!(sol.grid() == expect)) throw std::runtime_error("manifest grid disagrees with field files");
  return sol;
}

}  // namespace lw
