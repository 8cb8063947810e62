#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>

#include "quickfield/dynamics.hpp"
#include "quickfield/experiment.hpp"
#include "quickfield/fields.hpp"
#include "quickfield/geometry.hpp"
#include "quickfield/render.hpp"

namespace py = pybind11;
using namespace quickfield;

namespace {

py::array_t<double> field_values(const PotentialField& field) {
  py::array_t<double> arr({field.height(), field.width()});
  std::copy(field.values().begin(), field.values().end(), arr.mutable_data());
  return arr;
}

}  // namespace

PYBIND11_MODULE(_quickfield, m) {
  m.doc() = "Occupancy-weighted grid potential fields and a cellular-automaton "
            "pedestrian model built on them";

  py::register_exception<ParseError>(m, "ParseError");
  py::register_exception<ValidationError>(m, "ValidationError");
  py::register_exception<ContractError>(m, "ContractError");
  py::register_exception<IoError>(m, "IoError");

  py::enum_<CellKind>(m, "CellKind")
      .value("Free", CellKind::Free)
      .value("Wall", CellKind::Wall)
      .value("Destination", CellKind::Destination);

  py::enum_<NeighborhoodKind>(m, "NeighborhoodKind")
      .value("VonNeumann", NeighborhoodKind::VonNeumann)
      .value("Moore", NeighborhoodKind::Moore);

  py::enum_<ExitLabel>(m, "ExitLabel")
      .value("Left", ExitLabel::Left)
      .value("Right", ExitLabel::Right);

  py::enum_<ExitVariant>(m, "ExitVariant")
      .value("V1_Recessed", ExitVariant::V1_Recessed)
      .value("V2_Flush", ExitVariant::V2_Flush)
      .value("V3_Corridor", ExitVariant::V3_Corridor);

  py::class_<Coord>(m, "Coord")
      .def(py::init<int, int>(), py::arg("x") = 0, py::arg("y") = 0)
      .def_readwrite("x", &Coord::x)
      .def_readwrite("y", &Coord::y)
      .def("__eq__",
           [](const Coord& a, const Coord& b) { return a == b; })
      .def("__hash__",
           [](const Coord& c) {
             return py::hash(py::make_tuple(c.x, c.y));
           })
      .def("__repr__", [](const Coord& c) {
        return "Coord(" + std::to_string(c.x) + ", " + std::to_string(c.y) +
               ")";
      });

  py::class_<Grid>(m, "Grid")
      .def(py::init<int, int, CellKind>(), py::arg("width"), py::arg("height"),
           py::arg("fill") = CellKind::Free)
      .def_property_readonly("width", &Grid::width)
      .def_property_readonly("height", &Grid::height)
      .def("at", py::overload_cast<int, int>(&Grid::at, py::const_))
      .def("set", py::overload_cast<int, int, CellKind>(&Grid::set))
      .def("in_bounds", py::overload_cast<int, int>(&Grid::in_bounds, py::const_))
      .def("destination_cells", &Grid::destination_cells)
      .def_readonly_static("CELL_SIZE_METERS", &Grid::kCellSizeMeters);

  py::class_<OccupancyMap>(m, "OccupancyMap")
      .def(py::init<int, int>(), py::arg("width"), py::arg("height"))
      .def_property_readonly("width", &OccupancyMap::width)
      .def_property_readonly("height", &OccupancyMap::height)
      .def("at", py::overload_cast<int, int>(&OccupancyMap::at, py::const_))
      .def("set", py::overload_cast<int, int, bool>(&OccupancyMap::set));

  py::class_<PotentialField>(m, "PotentialField")
      .def_property_readonly("width", &PotentialField::width)
      .def_property_readonly("height", &PotentialField::height)
      .def("at", py::overload_cast<int, int>(&PotentialField::at, py::const_))
      .def("values", &field_values,
           "Field values as a (height, width) float array; inf marks walls "
           "and unreachable cells");

  py::class_<Scenario>(m, "Scenario")
      .def(py::init<>())
      .def_readwrite("grid", &Scenario::grid)
      .def_readwrite("start_region", &Scenario::start_region)
      .def_readwrite("agent_count", &Scenario::agent_count)
      .def_readwrite("exit_labels", &Scenario::exit_labels)
      .def_readwrite("variant", &Scenario::variant)
      .def("validate", &Scenario::validate);

  py::class_<Rimea11Params>(m, "Rimea11Params")
      .def(py::init<>())
      .def_readwrite("room_width", &Rimea11Params::room_width)
      .def_readwrite("room_height", &Rimea11Params::room_height)
      .def_readwrite("exit_width", &Rimea11Params::exit_width)
      .def_readwrite("extra_path_cells", &Rimea11Params::extra_path_cells)
      .def_readwrite("agent_count", &Rimea11Params::agent_count);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("k_s", &ModelParams::k_s)
      .def_readwrite("k_sdyn", &ModelParams::k_sdyn)
      .def_readwrite("s_add", &ModelParams::s_add)
      .def_readwrite("max_time", &ModelParams::max_time)
      .def("validate", &ModelParams::validate);

  py::class_<Agent>(m, "Agent")
      .def_readonly("id", &Agent::id)
      .def_readonly("position", &Agent::position)
      .def_readonly("speed", &Agent::speed)
      .def_readonly("exit_time", &Agent::exit_time)
      .def_readonly("exit_taken", &Agent::exit_taken)
      .def("active", &Agent::active);

  py::class_<RunResult>(m, "RunResult")
      .def_readonly("seed", &RunResult::seed)
      .def_readonly("total_time", &RunResult::total_time)
      .def_readonly("mean_exit_time", &RunResult::mean_exit_time)
      .def_readonly("right_exit_count", &RunResult::right_exit_count)
      .def_readonly("left_exit_count", &RunResult::left_exit_count)
      .def_readonly("completed", &RunResult::completed)
      .def_readonly("agents", &RunResult::agents);

  py::class_<AggregateMetrics>(m, "AggregateMetrics")
      .def_readonly("n_runs", &AggregateMetrics::n_runs)
      .def_readonly("mean_total_time", &AggregateMetrics::mean_total_time)
      .def_readonly("sd_total_time", &AggregateMetrics::sd_total_time)
      .def_readonly("mean_individual_time",
                    &AggregateMetrics::mean_individual_time)
      .def_readonly("sd_individual_time", &AggregateMetrics::sd_individual_time)
      .def_readonly("mean_right_exit", &AggregateMetrics::mean_right_exit)
      .def_readonly("sd_right_exit", &AggregateMetrics::sd_right_exit)
      .def_readonly("incomplete_runs", &AggregateMetrics::incomplete_runs);

  py::class_<BatchResult>(m, "BatchResult")
      .def_readonly("aggregate", &BatchResult::aggregate)
      .def_readonly("runs", &BatchResult::runs);

  py::class_<SweepRow>(m, "SweepRow")
      .def_readonly("s_add", &SweepRow::s_add)
      .def_readonly("aggregate", &SweepRow::aggregate);

  py::class_<Simulation>(m, "Simulation")
      .def(py::init<Scenario, const ModelParams&, std::uint64_t>(),
           py::arg("scenario"), py::arg("params"), py::arg("seed"))
      .def("step", &Simulation::step)
      .def("done", &Simulation::done)
      .def_property_readonly("clock", &Simulation::clock)
      .def_property_readonly("active_count", &Simulation::active_count)
      .def_property_readonly("exited_count", &Simulation::exited_count)
      .def_property_readonly("agents", &Simulation::agents)
      .def_property_readonly("static_field", &Simulation::static_field)
      .def_property_readonly("s_dyn", &Simulation::s_dyn)
      .def_property_readonly("occupancy", &Simulation::occupancy)
      .def("result", &Simulation::result);

  py::class_<RasterImage>(m, "RasterImage")
      .def_readonly("width", &RasterImage::width)
      .def_readonly("height", &RasterImage::height)
      .def_readonly("channels", &RasterImage::channels)
      .def("tobytes", [](const RasterImage& img) {
        return py::bytes(reinterpret_cast<const char*>(img.pixels.data()),
                         img.pixels.size());
      });

  py::enum_<RenderMode>(m, "RenderMode")
      .value("Gray", RenderMode::Gray)
      .value("Rgb", RenderMode::Rgb);

  m.def("neighbors", &neighbors, py::arg("grid"), py::arg("cell"),
        py::arg("kind"));
  m.def("parse_scenario", &parse_scenario, py::arg("map_text"),
        py::arg("config_text") = "");
  m.def("load_scenario", &load_scenario, py::arg("file_text"));
  m.def("serialize", &serialize, py::arg("scenario"));
  m.def("build_rimea11", &build_rimea11, py::arg("variant"),
        py::arg("params") = Rimea11Params{});

  m.def("flood_fill", &flood_fill, py::arg("grid"), py::arg("occupancy"),
        py::arg("kind"), py::arg("s_add") = 1.0);
  m.def("combine_v1", &combine_v1, py::arg("manhattan"), py::arg("chebyshev"));
  m.def("compute_static", &compute_static, py::arg("grid"));
  m.def("compute_s_dyn", &compute_s_dyn, py::arg("grid"), py::arg("occupancy"),
        py::arg("static_field"), py::arg("s_add"));
  m.def("field_to_text", &field_to_text, py::arg("field"));

  m.def("quantize_speed", &quantize_speed, py::arg("raw"));
  m.def("candidate_cells", &candidate_cells, py::arg("grid"),
        py::arg("occupancy"), py::arg("position"), py::arg("speed"));
  m.def("run", &run, py::arg("scenario"), py::arg("params"), py::arg("seed"));
  m.def("batch", &batch, py::arg("scenario"), py::arg("params"),
        py::arg("n_runs"), py::arg("base_seed"), py::arg("jobs") = 0);
  m.def("sadd_sweep", &sadd_sweep, py::arg("scenario"), py::arg("params"),
        py::arg("sadd_values"), py::arg("n_runs"), py::arg("base_seed"),
        py::arg("jobs") = 0);

  m.def("render_field", &render_field, py::arg("field"), py::arg("grid"),
        py::arg("mode") = RenderMode::Gray, py::arg("scale") = 1);
  m.def("render_snapshot", &render_snapshot, py::arg("grid"),
        py::arg("occupancy"), py::arg("scale") = 1);
  m.def("render_metric_comparison", &render_metric_comparison, py::arg("grid"),
        py::arg("scale") = 1);
  m.def("encode_pgm", [](const RasterImage& img) {
    return py::bytes(encode_pgm(img));
  });
  m.def("encode_ppm", [](const RasterImage& img) {
    return py::bytes(encode_ppm(img));
  });
  m.def("encode_field_pgm16",
        [](const PotentialField& field, const Grid& grid) {
          return py::bytes(encode_field_pgm16(field, grid));
        });
}
