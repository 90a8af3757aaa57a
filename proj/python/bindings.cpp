#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "sqcodes/codes.hpp"
#include "sqcodes/errors.hpp"
#include "sqcodes/experiments.hpp"
#include "sqcodes/quadforms.hpp"
#include "sqcodes/rng.hpp"

namespace py = pybind11;
using namespace sqcodes;

namespace {

std::vector<std::vector<int>> rows_of(const MatFq& m) {
  std::vector<std::vector<int>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    out[i].reserve(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m.at(i, j));
  }
  return out;
}

MatFq mat_from_rows(const FieldPtr& ctx,
                    const std::vector<std::vector<std::uint32_t>>& rows) {
  if (rows.empty()) throw DimensionMismatch("need at least one generator row");
  return MatFq::from_rows(ctx, rows.front().size(), rows);
}

QuadraticForm form_of(std::uint32_t q, std::size_t k, const VecFq& coeffs) {
  return QuadraticForm(FieldCtx::make(q), k, coeffs);
}

py::dict distinguish_dict(const DistinguisherReport& r) {
  py::dict d;
  d["n"] = r.n;
  d["k"] = r.k;
  d["dim_square"] = r.dim_square;
  d["expected_dim"] = r.expected_dim;
  d["deficiency"] = r.deficiency;
  d["threshold"] = r.threshold;
  d["structured"] = r.structured;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Linear codes over finite fields, Schur squares, and the "
            "quadratic-form machinery behind square-dimension statistics";
  m.attr("__version__") = kVersion;

  py::register_exception<Error>(m, "SqcodesError");
  py::register_exception<BudgetExceeded>(m, "BudgetError");

  // field arithmetic (contexts are cached per q)
  m.def("field_add", [](std::uint32_t q, Fe a, Fe b) {
    auto c = FieldCtx::make(q);
    c->check(a); c->check(b);
    return c->add(a, b);
  });
  m.def("field_sub", [](std::uint32_t q, Fe a, Fe b) {
    auto c = FieldCtx::make(q);
    c->check(a); c->check(b);
    return c->sub(a, b);
  });
  m.def("field_mul", [](std::uint32_t q, Fe a, Fe b) {
    auto c = FieldCtx::make(q);
    c->check(a); c->check(b);
    return c->mul(a, b);
  });
  m.def("field_inv", [](std::uint32_t q, Fe a) {
    auto c = FieldCtx::make(q);
    c->check(a);
    return c->inv(a);
  });
  m.def("field_pow", [](std::uint32_t q, Fe a, std::uint64_t r) {
    auto c = FieldCtx::make(q);
    c->check(a);
    return c->pow(a, r);
  });
  m.def("field_modulus", [](std::uint32_t q) {
    return FieldCtx::make(q)->modulus();
  });

  py::class_<LinearCode>(m, "LinearCode")
      .def_static("from_generator",
                  [](std::uint32_t q,
                     const std::vector<std::vector<std::uint32_t>>& rows) {
                    auto ctx = FieldCtx::make(q);
                    return LinearCode::from_generator(mat_from_rows(ctx, rows));
                  },
                  py::arg("q"), py::arg("rows"))
      .def_property_readonly("q",
                             [](const LinearCode& c) { return c.ctx()->q(); })
      .def_property_readonly("n", &LinearCode::n)
      .def_property_readonly("k", &LinearCode::k)
      .def("generator",
           [](const LinearCode& c) { return rows_of(c.generator()); })
      .def("__eq__", [](const LinearCode& a, const LinearCode& b) { return a == b; })
      .def("__repr__", [](const LinearCode& c) {
        return "<LinearCode q=" + std::to_string(c.ctx()->q()) +
               " n=" + std::to_string(c.n()) + " k=" + std::to_string(c.k()) + ">";
      });

  m.def("rs_code", [](std::uint32_t q, std::size_t n, std::size_t k) {
    return rs_code(FieldCtx::make(q), n, k);
  }, py::arg("q"), py::arg("n"), py::arg("k"));
  m.def("sample_code",
        [](std::uint32_t q, std::size_t n, std::size_t k,
           const std::string& model, std::uint64_t seed) {
          Rng rng(seed);
          return sample_code(FieldCtx::make(q), n, k, model_from_name(model), rng);
        },
        py::arg("q"), py::arg("n"), py::arg("k"),
        py::arg("model") = "systematic", py::arg("seed") = 0);
  m.def("schur_product", &schur_product);
  m.def("schur_power", &schur_power, py::arg("c"), py::arg("d"));
  m.def("schur_square_dim", &schur_square_dim);
  m.def("dual", &dual);
  m.def("min_distance", &min_distance, py::arg("c"),
        py::arg("budget") = kMinDistBudget);
  m.def("puncture", &puncture, py::arg("c"), py::arg("positions"));
  m.def("ev_kernel_dim", &ev_kernel_dim);
  m.def("is_subcode", &is_subcode, py::arg("inner"), py::arg("outer"));
  m.def("distinguish",
        [](const LinearCode& c, std::size_t threshold) {
          return distinguish_dict(distinguish(c, threshold));
        },
        py::arg("c"), py::arg("threshold") = 1);
  m.def("code_to_text", &code_to_text);
  m.def("parse_code_text", &parse_code_text);
  m.def("read_code_file", &read_code_file);
  m.def("write_code_file", &write_code_file);

  // quadratic forms are passed as (q, k, coeffs) with the k(k+1)/2
  // upper-triangle coefficients in row-major order
  m.def("qf_eval", [](std::uint32_t q, std::size_t k, const VecFq& coeffs,
                      const VecFq& x) { return form_of(q, k, coeffs).eval(x); });
  m.def("qf_rank", [](std::uint32_t q, std::size_t k, const VecFq& coeffs) {
    return qf_rank(form_of(q, k, coeffs));
  });
  m.def("zero_count_closed",
        [](std::uint32_t q, std::size_t k, const VecFq& coeffs) {
          return zero_count_closed(form_of(q, k, coeffs));
        });
  m.def("zero_count_brute",
        [](std::uint32_t q, std::size_t k, const VecFq& coeffs,
           std::uint64_t budget) {
          return zero_count_brute(form_of(q, k, coeffs), budget);
        },
        py::arg("q"), py::arg("k"), py::arg("coeffs"),
        py::arg("budget") = kZeroBruteBudget);
  m.def("decompose", [](std::uint32_t q, std::size_t k, const VecFq& coeffs) {
    QuadraticForm f = form_of(q, k, coeffs);
    Decomposition d = decompose(f);
    bool verified = recompose(f.ctx(), k, d) == f;
    py::dict out;
    out["rank"] = qf_rank(f);
    out["radical"] = rows_of(d.radical);
    py::list pairs;
    for (const auto& pr : d.pairs) {
      py::dict p;
      p["v1"] = pr.v1;
      p["v2"] = pr.v2;
      p["q1"] = pr.q1;
      p["q2"] = pr.q2;
      pairs.append(p);
    }
    out["pairs"] = pairs;
    out["residual"] = rows_of(d.residual);
    out["verified"] = verified;
    return out;
  });
  m.def("gbinom_str", [](std::size_t k, std::size_t r, std::uint32_t q) {
    return gbinom(k, r, q).str();
  });
  m.def("n_fullrank_str", [](std::uint32_t q, std::size_t k) {
    return n_fullrank(k, q).str();
  });
  m.def("n_rank_str", [](std::uint32_t q, std::size_t k, std::size_t r) {
    return n_rank(k, r, q).str();
  });
  m.def("census_brute",
        [](std::uint32_t q, std::size_t k, std::uint64_t budget) {
          return census_brute(FieldCtx::make(q), k, budget).counts;
        },
        py::arg("q"), py::arg("k"), py::arg("budget") = kCensusBudget);

  m.def("exact_expectation",
        [](std::uint32_t q, std::size_t k, const std::string& mode,
           std::uint64_t budget) {
          ZeroCountMode zm = mode == "brute" ? ZeroCountMode::Brute
                                             : ZeroCountMode::Closed;
          ExactExpectation e = exact_expectation(q, k, zm, budget);
          py::dict out;
          out["q"] = e.q;
          out["k"] = e.k;
          out["m"] = e.m;
          out["num"] = e.num.str();
          out["den"] = e.den.str();
          out["value"] = e.value;
          out["fraction"] = e.fraction;
          return out;
        },
        py::arg("q"), py::arg("k"), py::arg("mode") = "closed",
        py::arg("budget") = kExpectBudget);

  // monte-carlo reports come back as JSON strings; the package wrapper
  // turns them into dicts
  m.def("mc_square_full_json",
        [](std::uint32_t q, std::size_t k, std::size_t n,
           const std::string& model, std::uint64_t trials, std::uint64_t seed) {
          return mc_square_full(q, k, n, model_from_name(model), trials, seed)
              .to_json().dump();
        });
  m.def("mc_kernel_size_json",
        [](std::uint32_t q, std::size_t k, std::size_t n,
           const std::string& model, std::uint64_t trials, std::uint64_t seed) {
          return mc_kernel_size(q, k, n, model_from_name(model), trials, seed)
              .to_json().dump();
        });
  m.def("mc_dim_at_large_n_json",
        [](std::uint32_t q, std::size_t k, std::size_t s,
           const std::string& model, std::uint64_t trials, std::uint64_t seed) {
          return mc_dim_at_large_n(q, k, s, model_from_name(model), trials, seed)
              .to_json().dump();
        });
  m.def("mc_dual_distance_json",
        [](std::uint32_t q, std::size_t k, std::uint64_t trials,
           std::uint64_t seed, double delta, std::uint64_t budget) {
          return mc_dual_distance(q, k, trials, seed, delta, budget)
              .to_json().dump();
        },
        py::arg("q"), py::arg("k"), py::arg("trials"), py::arg("seed"),
        py::arg("delta") = 0.1, py::arg("budget") = kMinDistBudget);
  m.def("mc_model_compare_json",
        [](std::uint32_t q, std::size_t k, std::size_t n, std::uint64_t trials,
           std::uint64_t seed) {
          return mc_model_compare(q, k, n, trials, seed).to_json().dump();
        });

  m.def("entropy_hq", &entropy_hq, py::arg("q"), py::arg("x"));
  m.def("worker_count", &worker_count);
}
