#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ssdbcodi/baselines.hpp"
#include "ssdbcodi/dataset.hpp"
#include "ssdbcodi/expansion.hpp"
#include "ssdbcodi/metrics.hpp"
#include "ssdbcodi/metricspace.hpp"
#include "ssdbcodi/model.hpp"
#include "ssdbcodi/pipeline.hpp"
#include "ssdbcodi/report.hpp"
#include "ssdbcodi/scoring.hpp"

namespace py = pybind11;
using namespace ssdbcodi;

namespace {

using DoubleArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

Matrix to_matrix(const DoubleArray& a) {
    if (a.ndim() != 2) throw std::invalid_argument("points must be a 2-D array");
    const auto rows = static_cast<std::size_t>(a.shape(0));
    const auto cols = static_cast<std::size_t>(a.shape(1));
    return Matrix(rows, cols, std::vector<double>(a.data(), a.data() + rows * cols));
}

py::array_t<double> to_array(const Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    std::copy(m.data().begin(), m.data().end(), out.mutable_data());
    return out;
}

LabelSet make_labels(const std::map<Index, ClassId>& normal, const std::set<Index>& outliers) {
    return LabelSet{normal, outliers};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Semi-supervised density-based clustering with integrated outlier detection.";

    m.attr("OUTLIER") = kOutlier;
    m.attr("UNCLUSTERED") = kUnclustered;
    m.attr("NOISE") = kNoise;

    py::class_<Dataset>(m, "Dataset")
        .def(py::init([](const DoubleArray& points, std::vector<ClassId> truth, std::string name) {
                 return make_dataset(to_matrix(points), std::move(truth), std::move(name));
             }),
             py::arg("points"), py::arg("truth"), py::arg("name") = "")
        .def_property_readonly("points", [](const Dataset& ds) { return to_array(ds.points); })
        .def_readonly("truth", &Dataset::truth)
        .def_readonly("name", &Dataset::name)
        .def_property_readonly("n", &Dataset::size)
        .def_property_readonly("d", &Dataset::dims)
        .def_property_readonly("num_clusters", &Dataset::num_clusters)
        .def_property_readonly("num_outliers", &Dataset::num_outliers)
        .def("__len__", &Dataset::size);

    m.def("load_csv",
          [](const std::string& path, const std::string& label_column, const std::string& sentinel) {
              return load_csv(path, {label_column, sentinel});
          },
          py::arg("path"), py::arg("label_column") = "label", py::arg("outlier_sentinel") = "o");
    m.def("min_max_scaled", &min_max_scaled);

    py::class_<LabelSet>(m, "LabelSet")
        .def(py::init(&make_labels), py::arg("normal") = std::map<Index, ClassId>{},
             py::arg("outliers") = std::set<Index>{})
        .def_readwrite("normal", &LabelSet::normal)
        .def_readwrite("outliers", &LabelSet::outliers)
        .def("labeled", &LabelSet::labeled)
        .def("serialize", &LabelSet::serialize)
        .def("__len__", &LabelSet::size)
        .def("__eq__", [](const LabelSet& a, const LabelSet& b) { return a == b; });

    m.def("sample_labels", &sample_labels, py::arg("dataset"), py::arg("fraction"), py::arg("seed"),
          py::arg("stratified") = false);

    py::class_<NeighborhoodIndex>(m, "NeighborhoodIndex")
        .def(py::init([](const Dataset& ds, std::size_t min_pts) { return build_index(ds, min_pts); }),
             py::arg("dataset"), py::arg("min_pts"))
        .def_property_readonly("n", &NeighborhoodIndex::size)
        .def_property_readonly("min_pts", &NeighborhoodIndex::min_pts)
        .def_property_readonly("core", &NeighborhoodIndex::core_distances)
        .def("dist", [](const NeighborhoodIndex& idx, Index p, Index q) {
            if (p >= idx.size() || q >= idx.size()) throw py::index_error("point index out of range");
            return idx.dist(p, q);
        })
        .def("reach_distance", &NeighborhoodIndex::reach_distance)
        .def("knn_by_rdist", &NeighborhoodIndex::knn_by_rdist)
        .def("is_density_reachable", &NeighborhoodIndex::is_density_reachable);
    m.def("build_index", [](const Dataset& ds, std::size_t min_pts) { return build_index(ds, min_pts); },
          py::arg("dataset"), py::arg("min_pts") = 3);

    py::class_<ExpansionRecord>(m, "ExpansionRecord")
        .def_readonly("root", &ExpansionRecord::root)
        .def_property_readonly("order",
                               [](const ExpansionRecord& r) {
                                   std::vector<std::pair<Index, double>> out;
                                   for (const auto& s : r.order) out.emplace_back(s.point, s.key);
                                   return out;
                               })
        .def_readonly("prefix_max", &ExpansionRecord::prefix_max)
        .def_readonly("boundary", &ExpansionRecord::boundary)
        .def("boundary_point", &ExpansionRecord::boundary_point);

    m.def("prim_expand", &prim_expand, py::arg("index"), py::arg("root"), py::arg("labels"),
          py::arg("terminate") = false);
    m.def("back_trace", &back_trace);
    m.def("ssdbscan", [](const NeighborhoodIndex& idx, const LabelSet& labels) { return ssdbscan(idx, labels).assign; });
    m.def("emax_over_roots", &emax_over_roots);

    m.def("r_score", [](std::vector<double> emax) { return r_score(emax); });
    m.def("l_score", [](std::vector<double> ld) { return l_score(ld); });
    m.def("local_density", &local_density);
    m.def("sim_score", &sim_score);

    py::class_<ScoreTable>(m, "ScoreTable")
        .def_readonly("r_score", &ScoreTable::r_score)
        .def_readonly("l_score", &ScoreTable::l_score)
        .def_readonly("sim_score", &ScoreTable::sim_score)
        .def_readonly("t_score", &ScoreTable::t_score);

    py::class_<TrainingEntry>(m, "TrainingEntry")
        .def_readonly("point", &TrainingEntry::point)
        .def_readonly("cls", &TrainingEntry::cls)
        .def_readonly("weight", &TrainingEntry::weight);

    py::class_<PipelineResult>(m, "PipelineResult")
        .def_readonly("clusters", &PipelineResult::clusters)
        .def_readonly("outliers", &PipelineResult::outliers)
        .def_readonly("outlier_score", &PipelineResult::outlier_score)
        .def_readonly("scores", &PipelineResult::scores)
        .def_property_readonly("reliable_clusters", [](const PipelineResult& r) { return r.assignment.assign; })
        .def_property_readonly("training", [](const PipelineResult& r) { return r.training.entries; })
        .def_readonly("emax", &PipelineResult::emax)
        .def_readonly("k_reliable", &PipelineResult::k_reliable)
        .def_readonly("knn_k", &PipelineResult::knn_k);

    m.def(
        "run",
        [](const Dataset& ds, const LabelSet& labels, double alpha, double beta, std::size_t min_pts,
           std::optional<std::size_t> k_reliable, std::size_t knn_k, unsigned threads) {
            PipelineParams p;
            p.score = {alpha, beta, min_pts};
            p.k_reliable = k_reliable;
            p.knn_k = knn_k;
            p.threads = threads;
            py::gil_scoped_release release;
            return run(ds, labels, p);
        },
        py::arg("dataset"), py::arg("labels"), py::arg("alpha") = 1.0 / 3.0, py::arg("beta") = 1.0 / 3.0,
        py::arg("min_pts") = 3, py::arg("k_reliable") = py::none(), py::arg("knn_k") = 5, py::arg("threads") = 1);

    py::class_<TuneReport>(m, "TuneReport")
        .def_property_readonly("grid",
                               [](const TuneReport& r) {
                                   std::vector<std::tuple<double, double, double>> out;
                                   for (const auto& c : r.grid) out.emplace_back(c.alpha, c.beta, c.objective);
                                   return out;
                               })
        .def_readonly("best_alpha", &TuneReport::best_alpha)
        .def_readonly("best_beta", &TuneReport::best_beta)
        .def_readonly("best_objective", &TuneReport::best_objective);

    m.def(
        "tune",
        [](const Dataset& ds, const LabelSet& labels, double grid_step, std::size_t folds, std::uint64_t seed,
           std::size_t min_pts, std::size_t knn_k, unsigned threads) {
            PipelineParams p;
            p.score.min_pts = min_pts;
            p.knn_k = knn_k;
            p.threads = threads;
            py::gil_scoped_release release;
            return tune(ds, labels, p, {grid_step, folds, seed});
        },
        py::arg("dataset"), py::arg("labels"), py::arg("grid_step") = 0.1, py::arg("folds") = 5,
        py::arg("seed") = 0, py::arg("min_pts") = 3, py::arg("knn_k") = 5, py::arg("threads") = 1);
    m.def("weight_lattice", &weight_lattice);

    m.def("auc", [](std::vector<double> scores, std::vector<bool> positive) { return auc(scores, positive); });
    m.def("rand_index",
          [](std::vector<ClassId> a, std::vector<ClassId> b) { return rand_index(a, b); });
    m.def("nmi", [](std::vector<ClassId> a, std::vector<ClassId> b) { return nmi(a, b); });

    m.def("dbscan", &dbscan, py::arg("index"), py::arg("epsilon"), py::arg("min_pts"));
    m.def(
        "kmeans",
        [](const Dataset& ds, std::size_t k, std::uint64_t seed, std::size_t max_iter) {
            const auto res = kmeans(ds, k, seed, max_iter);
            return py::make_tuple(res.assign, to_array(res.centroids));
        },
        py::arg("dataset"), py::arg("k"), py::arg("seed") = 0, py::arg("max_iter") = 300);
    m.def("lof", &lof, py::arg("index"), py::arg("k"));

    m.def(
        "run_trial_json",
        [](const Dataset& ds, double label_fraction, std::uint64_t seed, double alpha, double beta,
           std::size_t min_pts, bool tune) {
            TrialConfig c;
            c.label_fraction = label_fraction;
            c.seed = seed;
            c.params.score = {alpha, beta, min_pts};
            c.tune = tune;
            c.timing = false;
            return to_json(run_trial(ds, c)).dump();
        },
        py::arg("dataset"), py::arg("label_fraction"), py::arg("seed"), py::arg("alpha") = 1.0 / 3.0,
        py::arg("beta") = 1.0 / 3.0, py::arg("min_pts") = 3, py::arg("tune") = false);

    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const CsvError& e) {
            PyErr_SetString(PyExc_ValueError, e.what());
        }
    });
}
