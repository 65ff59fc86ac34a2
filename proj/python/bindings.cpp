// Copyright 2026 The kpvqe Authors
// SPDX-License-Identifier: Apache-2.0

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "kpvqe/exact.hpp"
#include "kpvqe/runner.hpp"
#include "kpvqe/spectra.hpp"

namespace py = pybind11;
using namespace kpvqe;

namespace {

PauliHamiltonian from_terms(const std::vector<std::pair<std::string, double>>& terms) {
  if (terms.empty()) throw std::invalid_argument("empty term list");
  std::vector<PauliTerm> out;
  for (const auto& [s, c] : terms) out.push_back({PauliString(s), c});
  return PauliHamiltonian(static_cast<int>(terms.front().first.size()), std::move(out));
}

py::dict to_dict(const BandStructureResult& r) {
  py::list points;
  for (const auto& p : r.points) {
    py::dict d;
    d["k"] = std::vector<double>{p.k.kx, p.k.ky, p.k.kz};
    d["path_coord"] = p.k.path_coord;
    d["energies"] = p.ssvqe.energies;
    d["exact"] = p.exact;
    d["errors"] = p.errors;
    d["cycles"] = p.ssvqe.cycles;
    d["converged"] = p.ssvqe.converged;
    d["diverged"] = p.ssvqe.diverged;
    points.append(d);
  }
  py::dict out;
  out["material"] = r.material;
  out["layers"] = r.n_layers;
  out["points"] = points;
  out["max_error"] = r.max_error();
  out["median_error"] = r.median_error();
  return out;
}

}  // namespace

PYBIND11_MODULE(_kpvqe, m) {
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<MaterialParams>(m, "MaterialParams")
      .def_readonly("name", &MaterialParams::name)
      .def_readonly("gamma1", &MaterialParams::gamma1)
      .def_readonly("gamma2", &MaterialParams::gamma2)
      .def_readonly("gamma3", &MaterialParams::gamma3)
      .def_readonly("delta", &MaterialParams::delta)
      .def_readonly("eps_gamma", &MaterialParams::eps_gamma)
      .def_readonly("ep", &MaterialParams::ep)
      .def_readonly("m_eff", &MaterialParams::m_eff)
      .def_readonly("a", &MaterialParams::a);

  m.def("load_material", [](const std::string& path) { return load_material_file(path); }, py::arg("path"));

  m.def(
      "build_hamiltonian",
      [](const MaterialParams& p, double kx, double ky, double kz) {
        return CMatrix(build_hamiltonian(p, {kx, ky, kz, 0.0}).matrix());
      },
      py::arg("material"), py::arg("kx"), py::arg("ky"), py::arg("kz"));

  m.def(
      "decompose",
      [](const CMatrix& h, double prune_tol) {
        const PauliHamiltonian ph = decompose(HermitianMatrix(h), prune_tol);
        std::vector<std::pair<std::string, double>> out;
        for (const auto& t : ph.terms()) {
          out.emplace_back(t.string.str(), t.coefficient);
        }
        return out;
      },
      py::arg("matrix"), py::arg("prune_tol") = kDefaultPruneTol);

  m.def(
      "qwc_partition",
      [](const std::vector<std::pair<std::string, double>>& terms) {
        const PauliHamiltonian h = from_terms(terms);
        std::vector<std::vector<std::string>> out;
        for (const auto& g : qwc_partition(h)) {
          auto& group = out.emplace_back();
          for (std::size_t i : g.members) group.push_back(h.terms()[i].string.str());
        }
        return out;
      },
      py::arg("terms"));

  m.def(
      "eigh",
      [](const CMatrix& h) {
        EigenDecomposition e = eigh(h);
        return py::make_tuple(e.eigenvalues, e.eigenvectors);
      },
      py::arg("matrix"));

  m.def(
      "make_kpath",
      [](double a, int n, double extent) {
        std::vector<std::vector<double>> out;
        for (const auto& k : make_kpath(a, n, extent)) out.push_back({k.kx, k.ky, k.kz, k.path_coord});
        return out;
      },
      py::arg("a"), py::arg("points_per_segment") = 21, py::arg("extent") = 0.1);

  m.def(
      "band_sweep",
      [](const MaterialParams& p, int points_per_segment, double extent, int layers,
         const std::string& optimizer, std::uint64_t seed) {
        SweepOptions o;
        o.n_layers = layers;
        o.optimizer.kind = parse_optimizer(optimizer);
        o.optimizer.tol = default_tolerance(o.mode);
        o.seed = seed;
        py::gil_scoped_release release;
        BandStructureResult r = band_sweep(p, make_kpath(p.a, points_per_segment, extent), o);
        py::gil_scoped_acquire acquire;
        return to_dict(r);
      },
      py::arg("material"), py::arg("points_per_segment") = 21, py::arg("extent") = 0.1,
      py::arg("layers") = 5, py::arg("optimizer") = "adam", py::arg("seed") = kDefaultSeed);

  m.def(
      "absorption",
      [](const std::vector<std::pair<double, double>>& lines, std::vector<double> grid) {
        std::vector<TransitionLine> ls;
        for (const auto& [e, w] : lines) ls.push_back({e, w});
        const AbsorptionSpectrum s = absorption_from_lines(ls, std::move(grid));
        return py::make_tuple(s.photon_energies, s.alpha, s.scale);
      },
      py::arg("lines"), py::arg("photon_energies"));
}
