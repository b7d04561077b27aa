// Copyright 2026 The wlra Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "wlra/generator.hpp"
#include "wlra/grouped_als.hpp"
#include "wlra/opt_bounds.hpp"
#include "wlra/pattern_index.hpp"
#include "wlra/sketch.hpp"
#include "wlra/weighted_cost.hpp"

namespace py = pybind11;
using namespace wlra;

namespace {

Axis parse_axis(const std::string& name) {
  if (name == "rows") return Axis::kRows;
  if (name == "cols") return Axis::kCols;
  throw InvalidInput("axis must be 'rows' or 'cols'");
}

BoundParams make_params(std::size_t n, double gamma, std::size_t k, std::size_t r,
                        double eps, double c_exp, double c_poly) {
  BoundParams p;
  p.n = n;
  p.gamma = gamma;
  p.k = k;
  p.r = r;
  p.eps = eps;
  p.c_exp = c_exp;
  p.c_poly = c_poly;
  return p;
}

}  // namespace

PYBIND11_MODULE(_wlra, m) {
  m.doc() = "Weighted low-rank approximation on few-distinct-pattern instances";

  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<GenerationFailure>(m, "GenerationFailure", PyExc_RuntimeError);

  py::class_<PatternIndex>(m, "PatternIndex")
      .def_property_readonly("axis", [](const PatternIndex& p) { return axis_name(p.axis); })
      .def_readonly("group_of", &PatternIndex::group_of)
      .def_readonly("representatives", &PatternIndex::representatives)
      .def_readonly("sizes", &PatternIndex::sizes)
      .def_property_readonly("num_groups", &PatternIndex::num_groups)
      .def("refines", &PatternIndex::refines);

  py::class_<StructuredInstance>(m, "StructuredInstance")
      .def_readonly("n", &StructuredInstance::n)
      .def_readonly("r", &StructuredInstance::r)
      .def_readonly("p", &StructuredInstance::p)
      .def_property_readonly("w_rows", &StructuredInstance::w_rows)
      .def_property_readonly("w_cols", &StructuredInstance::w_cols)
      .def_property_readonly("wa_rows", &StructuredInstance::wa_rows)
      .def_property_readonly("wa_cols", &StructuredInstance::wa_cols)
      .def_property_readonly("has_dense", &StructuredInstance::has_dense)
      .def_property_readonly("A", [](const StructuredInstance& s) -> py::object {
        return s.a ? py::cast(*s.a) : py::none();
      })
      .def_property_readonly("W", [](const StructuredInstance& s) -> py::object {
        return s.w ? py::cast(*s.w) : py::none();
      });

  m.def("detect_groups",
        [](const DenseMatrix& mat, const std::string& axis, double tol) {
          return detect_groups(mat, parse_axis(axis), tol);
        },
        py::arg("M"), py::arg("axis") = "rows", py::arg("tolerance") = 0.0);
  m.def("refine", &refine, py::arg("outer"), py::arg("inner_key"), py::arg("tolerance") = 0.0);
  m.def("build_instance", &build_instance, py::arg("A"), py::arg("W"),
        py::arg("tolerance") = 0.0);

  m.def("generate",
        [](std::size_t n, std::size_t r, std::size_t p, std::size_t k_true, double noise,
           const std::string& style, uint64_t seed, bool dense) {
          GenSpec spec;
          spec.n = n;
          spec.r = r;
          spec.p = p;
          spec.k_true = k_true;
          spec.noise_sigma = noise;
          const auto parsed = parse_weight_style(style);
          if (!parsed) throw InvalidInput("unknown weight style " + style);
          spec.weight_style = *parsed;
          spec.seed = seed;
          return dense ? generate(spec) : generate_structured(spec).instance;
        },
        py::arg("n"), py::arg("r"), py::arg("p"), py::arg("k_true"),
        py::arg("noise") = 0.0, py::arg("style") = "block_random", py::arg("seed") = 0,
        py::arg("dense") = true);
  m.def("generate_attention_mask", &generate_attention_mask, py::arg("n"), py::arg("block"));

  m.def("cost_dense", &cost_dense, py::arg("A"), py::arg("W"), py::arg("U"), py::arg("V"));
  m.def("cost_grouped",
        [](const StructuredInstance& inst, const DenseMatrix& u, const DenseMatrix& v) {
          return cost_grouped(inst, GroupedFactor::compress(inst.wa_rows(), u), v);
        },
        py::arg("instance"), py::arg("U"), py::arg("V"));

  m.def("sketch_dim", &sketch_dim, py::arg("k"), py::arg("eps"),
        py::arg("c_s") = kDefaultSketchConstant);
  m.def("gaussian_sketch",
        [](uint64_t seed, std::size_t t, std::size_t n) {
          return gaussian_sketch(seed, t, n).values;
        },
        py::arg("seed"), py::arg("t"), py::arg("n"));
  m.def("min_norm_solve",
        [](const DenseMatrix& d, const Vector& b, double tol) {
          return min_norm_solve(d, b, tol);
        },
        py::arg("design"), py::arg("target"), py::arg("rank_tolerance") = 1e-10);

  m.def("upper_bound", &upper_bound, py::arg("instance"));
  m.def("lower_bound_log2",
        [](std::size_t n, double gamma, std::size_t k, std::size_t r, double eps,
           double c_exp, double c_poly) {
          const LowerBound lb = lower_bound_log2(make_params(n, gamma, k, r, eps, c_exp, c_poly));
          return py::make_tuple(lb.log2_value, lb.overflow);
        },
        py::arg("n"), py::arg("gamma"), py::arg("k"), py::arg("r"), py::arg("eps"),
        py::arg("c_exp") = 1.0, py::arg("c_poly") = 1.0);
  m.def("iteration_budget",
        [](std::size_t n, double gamma, std::size_t k, std::size_t r, double eps,
           double c_exp, double c_poly) {
          return iteration_budget(make_params(n, gamma, k, r, eps, c_exp, c_poly));
        },
        py::arg("n"), py::arg("gamma"), py::arg("k"), py::arg("r"), py::arg("eps"),
        py::arg("c_exp") = 1.0, py::arg("c_poly") = 1.0);

  m.def("solve",
        [](const StructuredInstance& inst, std::size_t k, double eps, std::size_t max_sweeps,
           double rel_tol, uint64_t seed, std::size_t restarts, bool sketchless,
           int threads) {
          SolveOptions opts;
          opts.k = k;
          opts.eps = eps;
          opts.max_sweeps = max_sweeps;
          opts.rel_tol = rel_tol;
          opts.seed = seed;
          opts.restarts = restarts;
          opts.sketchless = sketchless;
          opts.threads = threads;
          auto [f, rep] = solve(inst, opts);
          py::dict report;
          report["cost_per_sweep"] = rep.cost_per_sweep;
          report["sweep_wall_times"] = rep.sweep_wall_times;
          report["regressions_per_half"] = rep.regressions_per_half;
          report["final_cost"] = rep.final_cost;
          report["sweeps"] = rep.sweeps;
          report["regressions_solved"] = rep.regressions_solved;
          report["restart_final_costs"] = rep.restart_final_costs;
          report["bracket"] = py::make_tuple(rep.bracket.lower_log2, rep.bracket.upper);
          report["iteration_budget"] = rep.bracket.iteration_budget;
          return py::make_tuple(f.u, f.v, report);
        },
        py::arg("instance"), py::arg("k"), py::arg("eps") = 0.25,
        py::arg("max_sweeps") = 100, py::arg("rel_tol") = 1e-6, py::arg("seed") = 0,
        py::arg("restarts") = 1, py::arg("sketchless") = false, py::arg("threads") = 1);
}
