#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "entcost/channels.hpp"
#include "entcost/cli.hpp"
#include "entcost/ef_variational.hpp"
#include "entcost/measures.hpp"

namespace py = pybind11;
using namespace entcost;

namespace {

using CArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const CArray& a) {
  if (a.ndim() != 2) throw DimensionError("expected a 2-d array");
  const auto r = static_cast<std::size_t>(a.shape(0));
  const auto c = static_cast<std::size_t>(a.shape(1));
  return Matrix(r, c, std::vector<cplx>(a.data(), a.data() + r * c));
}

Vector to_vector(const CArray& a) {
  if (a.ndim() != 1) throw DimensionError("expected a 1-d array");
  return Vector(a.data(), a.data() + a.shape(0));
}

CArray from_matrix(const Matrix& m) {
  CArray out({m.rows(), m.cols()});
  std::copy(m.data().begin(), m.data().end(), out.mutable_data());
  return out;
}

CArray from_vector(std::span<const cplx> v) {
  CArray out(v.size());
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

DimSplit split_of(std::pair<std::size_t, std::size_t> dims) { return {dims.first, dims.second}; }

DensityMatrix density(const CArray& rho, std::pair<std::size_t, std::size_t> dims) {
  return DensityMatrix(to_matrix(rho), split_of(dims));
}

Side side_of(const std::string& s) {
  if (s == "A") return Side::A;
  if (s == "B") return Side::B;
  throw DomainError("side must be 'A' or 'B'");
}

BellKind bell_kind(const std::string& s) {
  if (s == "phi+") return BellKind::PhiPlus;
  if (s == "phi-") return BellKind::PhiMinus;
  if (s == "psi+") return BellKind::PsiPlus;
  if (s == "psi-") return BellKind::PsiMinus;
  throw DomainError("bell state must be one of phi+, phi-, psi+, psi-");
}

SubspaceBasis basis_of(int id, bool literal) {
  if (literal) {
    if (id != 4) throw DomainError("literal basis exists only for example 4");
    return example4_literal_basis();
  }
  return subspace_basis(id);
}

py::dict cert_dict(const EbCertificate& c) {
  py::dict d;
  d["verdict"] = std::string(to_string(c.verdict));
  d["method"] = c.method ? py::object(py::str(std::string(to_string(*c.method)))) : py::object(py::none());
  d["min_pt_eig"] = c.min_pt_eig;
  py::list terms;
  for (const auto& t : c.ensemble) terms.append(py::make_tuple(t.weight, from_vector(t.a), from_vector(t.b)));
  d["ensemble"] = terms;
  d["ensemble_residual"] = c.ensemble_residual;
  d["witness"] = c.pt_witness.empty() ? py::object(py::none()) : py::object(from_vector(c.pt_witness));
  return d;
}

OptimizerConfig config(int restarts, int max_iters, std::size_t ensemble_size, std::uint64_t seed,
                       unsigned threads) {
  OptimizerConfig cfg;
  cfg.restarts = restarts;
  cfg.max_iters = max_iters;
  cfg.ensemble_size = ensemble_size;
  cfg.seed = seed;
  cfg.threads = threads;
  return cfg;
}

py::dict result_dict(const EfResult& r) {
  py::dict d;
  d["value"] = r.value.value();
  d["restarts_converged"] = r.restarts_converged;
  d["history"] = r.history;
  d["weights"] = r.decomposition.weights;
  py::list states;
  for (const auto& s : r.decomposition.states) states.append(from_vector(s.vec()));
  d["states"] = states;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Bindings for the entcost C++ library";
  py::register_exception<ContractError>(m, "ContractError", PyExc_ArithmeticError);

  m.def("bell_state", [](const std::string& kind) { return from_vector(bell_state(bell_kind(kind)).vec()); },
        py::arg("kind"));
  m.def("bell_mix", [](double p) { return from_matrix(bell_mix(BellMixParam(p)).mat()); }, py::arg("p"),
        "(1 - p) Phi+ + p Phi-, p in [0, 1/2].");
  m.def("random_density",
        [](std::pair<std::size_t, std::size_t> dims, std::size_t rank, std::uint64_t seed) {
          return from_matrix(random_density(split_of(dims), rank, seed).mat());
        },
        py::arg("dims"), py::arg("rank"), py::arg("seed") = 0);

  m.def("partial_trace",
        [](const CArray& a, std::pair<std::size_t, std::size_t> dims, const std::string& keep) {
          return from_matrix(partial_trace(to_matrix(a), split_of(dims), side_of(keep)));
        },
        py::arg("m"), py::arg("dims"), py::arg("keep") = "A");
  m.def("partial_transpose",
        [](const CArray& a, std::pair<std::size_t, std::size_t> dims, const std::string& side) {
          return from_matrix(partial_transpose(to_matrix(a), split_of(dims), side_of(side)));
        },
        py::arg("m"), py::arg("dims"), py::arg("side") = "B");

  m.def("binary_entropy", [](double x) { return binary_entropy(x).value(); }, py::arg("x"));
  m.def("von_neumann_entropy",
        [](const CArray& rho, std::pair<std::size_t, std::size_t> dims) {
          return von_neumann_entropy(density(rho, dims)).value();
        },
        py::arg("rho"), py::arg("dims"));
  m.def("entropy_of_entanglement",
        [](const CArray& psi, std::pair<std::size_t, std::size_t> dims) {
          return entropy_of_entanglement(PureState(to_vector(psi), split_of(dims))).value();
        },
        py::arg("psi"), py::arg("dims"));
  m.def("concurrence", [](const CArray& rho) { return concurrence(density(rho, {2, 2})); }, py::arg("rho"));
  m.def("ef_two_qubit", [](const CArray& rho) { return ef_two_qubit(density(rho, {2, 2})).value(); },
        py::arg("rho"));
  m.def("ec_bell_mix", [](double p) { return ec_bell_mix(BellMixParam(p)).value(); }, py::arg("p"));
  m.def("ed_hashing", [](double p) { return ed_hashing(BellMixParam(p)).value(); }, py::arg("p"));
  m.def("ssa_check",
        [](const CArray& psi, std::array<std::size_t, 3> dims) { return ssa_check(to_vector(psi), dims); },
        py::arg("psi"), py::arg("dims"));

  m.def("subspace_basis",
        [](int id, bool literal) {
          const auto b = basis_of(id, literal);
          py::list vecs;
          for (const auto& v : b.vectors) vecs.append(from_vector(v.vec()));
          return py::make_tuple(py::make_tuple(b.ambient.dA, b.ambient.dB), vecs);
        },
        py::arg("example_id"), py::arg("literal") = false,
        "((dA, dB), [basis vectors]) for the named subspace example.");
  m.def("constant_entanglement_check",
        [](int id, int samples, std::uint64_t seed, bool literal) {
          const auto r = constant_entanglement_check(basis_of(id, literal), samples, seed);
          py::dict d;
          d["is_constant"] = r.is_constant;
          d["spectrum"] = r.spectrum;
          d["value"] = r.value.value();
          return d;
        },
        py::arg("example_id"), py::arg("samples") = 64, py::arg("seed") = 0, py::arg("literal") = false);
  m.def("choi_of_example",
        [](int id, bool literal) { return from_matrix(choi(trace_out_map(basis_of(id, literal))).mat()); },
        py::arg("example_id"), py::arg("literal") = false);
  m.def("eb_certify_example",
        [](int id, bool literal) { return cert_dict(eb_certify(trace_out_map(basis_of(id, literal)))); },
        py::arg("example_id"), py::arg("literal") = false);
  m.def("eb_certify_choi",
        [](const CArray& j, std::pair<std::size_t, std::size_t> dims) {
          return cert_dict(eb_certify_choi(density(j, dims)));
        },
        py::arg("choi"), py::arg("dims"));

  m.def("ef_upper_bound",
        [](const CArray& rho, std::pair<std::size_t, std::size_t> dims, int restarts, int max_iters,
           std::size_t ensemble_size, std::uint64_t seed, unsigned threads) {
          const auto cfg = config(restarts, max_iters, ensemble_size, seed, threads);
          const auto state = density(rho, dims);
          EfResult r;
          {
            py::gil_scoped_release release;
            r = ef_upper_bound(state, cfg);
          }
          return result_dict(r);
        },
        py::arg("rho"), py::arg("dims"), py::arg("restarts") = 20, py::arg("max_iters") = 3000,
        py::arg("ensemble_size") = 0, py::arg("seed") = 0, py::arg("threads") = 1);
  m.def("additivity_gap",
        [](double p, double q, int restarts, std::uint64_t seed, unsigned threads) {
          const auto cfg = config(restarts, 3000, 0, seed, threads);
          const auto rho = bell_mix(BellMixParam(p));
          const auto sigma = bell_mix(BellMixParam(q));
          AdditivityResult r;
          {
            py::gil_scoped_release release;
            r = additivity_gap(rho, sigma, cfg);
          }
          py::dict d;
          d["gap"] = r.gap;
          d["joint_value"] = r.joint.value.value();
          d["reference_p"] = r.reference_rho;
          d["reference_q"] = r.reference_sigma;
          return d;
        },
        py::arg("p"), py::arg("q"), py::arg("restarts") = 20, py::arg("seed") = 0, py::arg("threads") = 1);

  m.def("run_cli",
        [](const std::vector<std::string>& args) {
          std::ostringstream out, err;
          const int code = cli::run(args, out, err);
          return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Runs the command-line interface in process; returns (exit_code, stdout, stderr).");
}
