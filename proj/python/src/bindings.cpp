#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <string>

#include "ccz/bench.hpp"
#include "ccz/circles.hpp"
#include "ccz/container.hpp"
#include "ccz/decoder.hpp"
#include "ccz/encoder.hpp"
#include "ccz/rle.hpp"

namespace py = pybind11;

namespace {

ccz::ByteView view(const py::bytes& b) {
    std::string_view sv = b;
    return ccz::as_bytes(sv);
}

py::bytes to_py(const ccz::Bytes& b) { return {reinterpret_cast<const char*>(b.data()), b.size()}; }

py::tuple entry_tuple(const ccz::CompressedEntry& e) {
    if (e.is_rebase()) {
        return py::make_tuple(e.rebase_amount(), 0, 0);
    }
    return py::make_tuple(e.signed_delta(), e.ch, e.count);
}

}  // namespace

PYBIND11_MODULE(_ccz, m) {
    m.doc() = "Concentric circles compression codec";

    py::register_exception<ccz::ArchiveError>(m, "ArchiveError", PyExc_ValueError);
    py::register_exception<ccz::CorruptArchive>(m, "CorruptArchive", PyExc_ValueError);

    py::class_<ccz::Run>(m, "Run")
        .def_readonly("ch", &ccz::Run::ch)
        .def_readonly("r1", &ccz::Run::r1)
        .def_readonly("count", &ccz::Run::count)
        .def_readonly("occurrences", &ccz::Run::occurrences)
        .def("__repr__", [](const ccz::Run& r) {
            return "Run(ch=" + std::to_string(r.ch) + ", r1=" + std::to_string(r.r1) +
                   ", count=" + std::to_string(r.count) + ")";
        });

    m.def("compress", [](const py::bytes& data) { return to_py(ccz::compress(view(data))); }, py::arg("data"));
    m.def("decompress", [](const py::bytes& archive) { return to_py(ccz::decompress(view(archive))); },
          py::arg("archive"));

    m.def(
        "split_circles",
        [](const py::bytes& data) {
            auto v = view(data);
            py::list out;
            for (auto c : ccz::circle_views(ccz::split_circles(v), v)) {
                out.append(py::bytes(reinterpret_cast<const char*>(c.data()), c.size()));
            }
            return out;
        },
        py::arg("data"), "Split data into maximal runs of distinct bytes.");
    m.def(
        "position_of",
        [](const py::bytes& data, std::uint64_t offset) {
            auto p = ccz::position_of(ccz::split_circles(view(data)), offset);
            return py::make_tuple(p.r, p.theta);
        },
        py::arg("data"), py::arg("offset"));

    m.def("detect_runs", [](const py::bytes& data) { return ccz::detect_runs(view(data)); }, py::arg("data"));
    m.def(
        "encode",
        [](const py::bytes& data) {
            auto parts = ccz::encode(view(data));
            py::list entries;
            for (const auto& e : parts.entries) {
                entries.append(entry_tuple(e));
            }
            py::dict d;
            d["flags"] = std::vector<bool>(parts.flags.begin(), parts.flags.end());
            d["literals"] = to_py(parts.literals);
            d["entries"] = entries;
            return d;
        },
        py::arg("data"),
        "Encoder streams: flags, literals and (delta, ch, count) entries; rebase entries appear as (amount, 0, 0).");

    m.def("pack_flags", [](const std::vector<bool>& bits) { return to_py(ccz::pack_flags(bits)); }, py::arg("bits"));
    m.def(
        "unpack_flags", [](const py::bytes& packed, std::uint64_t n) { return ccz::unpack_flags(view(packed), n); },
        py::arg("packed"), py::arg("n"));

    m.def("rle_encode", [](const py::bytes& data) { return to_py(ccz::rle_encode(view(data))); }, py::arg("data"));
    m.def("rle_decode", [](const py::bytes& data) { return to_py(ccz::rle_decode(view(data))); }, py::arg("data"));

    m.def("compression_factor", &ccz::compression_factor, py::arg("original_size"), py::arg("compressed_size"));
    m.def(
        "bench",
        [](const std::filesystem::path& dir, const std::string& format) {
            auto report = ccz::run_corpus(dir);
            return ccz::emit_report(report, format == "csv" ? ccz::ReportFormat::csv : ccz::ReportFormat::markdown);
        },
        py::arg("corpus"), py::arg("format") = "markdown");
}
