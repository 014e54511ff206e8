#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <pendcart/config.hpp>
#include <pendcart/csv_io.hpp>
#include <pendcart/sim_engine.hpp>
#include <pendcart/verify.hpp>

#include <array>
#include <tuple>
#include <vector>

namespace py = pybind11;
using namespace pendcart;

namespace {

std::array<double, 4> to_array(const Vec4& v) {
  return {v(0), v(1), v(2), v(3)};
}

std::array<std::array<double, 2>, 2> to_array(const Mat2& m) {
  return {{{m(0, 0), m(0, 1)}, {m(1, 0), m(1, 1)}}};
}

State to_state(const std::array<double, 4>& s) {
  return State{s[0], s[1], s[2], s[3]};
}

}  // namespace

PYBIND11_MODULE(_pendcart, m) {
  m.doc() = "pendulum-cart matching-control toolkit";

  py::register_exception<GeometryError>(m, "GeometryError");

  py::class_<DesignParams>(m, "DesignParams")
      .def(py::init<>())
      .def_readwrite("b", &DesignParams::b)
      .def_readwrite("theta_L", &DesignParams::theta_L)
      .def_readwrite("y_L", &DesignParams::y_L)
      .def_readwrite("sigma0", &DesignParams::sigma0)
      .def_readwrite("sigma_inf", &DesignParams::sigma_inf)
      .def_readwrite("mu0", &DesignParams::mu0)
      .def_readwrite("mu_inf", &DesignParams::mu_inf)
      .def_readwrite("w0", &DesignParams::w0)
      .def_readwrite("w_inf", &DesignParams::w_inf)
      .def_readwrite("phi0", &DesignParams::phi0)
      .def_readwrite("phi_inf", &DesignParams::phi_inf)
      .def_readwrite("h0", &DesignParams::h0)
      .def_readwrite("h_inf", &DesignParams::h_inf)
      .def_readwrite("symmetric_y_regions", &DesignParams::symmetric_y_regions)
      .def_readwrite("region_local_dissipation",
                     &DesignParams::region_local_dissipation);

  py::class_<MatchingLaw>(m, "MatchingLaw")
      .def(py::init<DesignParams>(), py::arg("params") = DesignParams{})
      .def("mu", &MatchingLaw::mu)
      .def("sigma", &MatchingLaw::sigma)
      .def("phi", &MatchingLaw::phi)
      .def("y_coord", &MatchingLaw::y_coord)
      .def("g_hat",
           [](const MatchingLaw& law, double theta, double x) {
             return to_array(law.g_hat(theta, x));
           })
      .def("v_hat", &MatchingLaw::v_hat)
      .def("control_force",
           [](const MatchingLaw& law, const std::array<double, 4>& s) {
             return law.control_force(to_state(s));
           })
      .def("lyapunov",
           [](const MatchingLaw& law, const std::array<double, 4>& s) {
             return law.lyapunov(to_state(s));
           })
      .def("lyapunov_rate",
           [](const MatchingLaw& law, const std::array<double, 4>& s) {
             return law.lyapunov_rate(to_state(s));
           });

  m.def("derive_gains", [](const MatchingLaw& law) {
    const LinearGains g = derive_gains(law);
    return std::make_tuple(g.p1, g.p2, g.d1, g.d2);
  });

  m.def(
      "discretize",
      [](double tau, double b) {
        PlantParams p;
        p.b = b;
        const Discretization d = discretize(linearize(p), tau);
        std::array<std::array<double, 4>, 4> a;
        for (int i = 0; i < 4; ++i)
          for (int j = 0; j < 4; ++j) a[i][j] = d.A_d(i, j);
        return std::make_tuple(a, to_array(d.B_d));
      },
      py::arg("tau"), py::arg("b") = 0.238);

  m.def("observer_spectral_radius", [] {
    return observer_spectral_radius(DiscreteGains::preset_paper_sec3());
  });

  m.def(
      "run_preset",
      [](const std::string& preset, double horizon) {
        RunConfig cfg;
        apply_preset(cfg, preset);
        if (horizon > 0) cfg.scenario.horizon = horizon;
        const MatchingLaw law(cfg.design);
        const LinearGains gains = derive_gains(law);
        const Trajectory tr =
            run_scenario(law, gains, cfg.resolve_discrete(), cfg.scenario);
        const StabilityVerdict v = classify(tr, cfg.scenario.horizon);
        py::dict out;
        out["status"] = to_string(v.outcome);
        out["settling_time"] = v.settling_time;
        out["peak_norm"] = v.peak_norm;
        out["samples"] = tr.samples.size();
        out["final_state"] = to_array(tr.samples.back().state.vec());
        return out;
      },
      py::arg("preset"), py::arg("horizon") = 0.0,
      "Run one of the named scenarios and classify the outcome.");

  m.def("verify", [] {
    const VerifyReport r = run_verification(DesignParams{});
    py::list items;
    for (const VerifyItem& it : r.items) {
      py::dict d;
      d["name"] = it.name;
      d["value"] = it.value;
      d["tolerance"] = it.tolerance;
      d["pass"] = it.pass;
      items.append(d);
    }
    return py::make_tuple(r.all_pass, items);
  });
}
