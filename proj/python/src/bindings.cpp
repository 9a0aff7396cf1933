#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "epcaddr/addressing.hpp"
#include "epcaddr/harness.hpp"

namespace py = pybind11;
using namespace epcaddr;

namespace {

EpcValue from_pyint(const py::int_& v)
{
    if (v < py::int_(0))
        throw Error(ErrorCode::MalformedNumber, "negative value");
    return parse_number(py::str("{:#x}").format(v).cast<std::string>());
}

py::int_ to_pyint(const EpcValue& v)
{
    return py::reinterpret_steal<py::int_>(PyLong_FromString(to_hex(v).c_str(), nullptr, 0));
}

Ipv6Address address_from(const py::object& obj)
{
    if (py::isinstance<py::str>(obj))
        return parse_ipv6(obj.cast<std::string>());
    const auto v = from_pyint(obj.cast<py::int_>());
    if (bit_length(v) > Ipv6Address::kBits)
        throw Error(ErrorCode::InvalidAddress, "wider than 128 bits");
    return Ipv6Address(low128(v));
}

AddressingMethodId method_from(const std::string& name)
{
    if (auto m = method_from_name(name))
        return *m;
    throw Error(ErrorCode::InvalidSpec, "unknown method " + name);
}

Scheme scheme_from(const std::string& name)
{
    if (auto s = scheme_from_name(name))
        return *s;
    throw Error(ErrorCode::UnknownScheme, name);
}

DeriveOptions derive_options(std::uint64_t salt, const std::string& standard)
{
    if (standard != "epc" && standard != "iso")
        throw Error(ErrorCode::InvalidSpec, "standard must be epc or iso");
    return {salt, standard == "iso" ? IdStandard::iso : IdStandard::epc};
}

py::object optional_int(const std::optional<EpcValue>& v)
{
    return v ? py::object(to_pyint(*v)) : py::object(py::none());
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "IPv6 addresses from Electronic Product Codes";

    PYBIND11_CONSTINIT static py::gil_safe_call_once_and_store<py::object> error_type;
    error_type.call_once_and_store_result(
        [&] { return py::object(py::exception<Error>(m, "EpcaddrError", PyExc_ValueError)); });
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p)
                std::rethrow_exception(p);
        } catch (const Error& e) {
            const auto& type = error_type.get_stored();
            py::object inst = type(e.what());
            inst.attr("code") = std::string(to_string(e.code()));
            PyErr_SetObject(type.ptr(), inst.ptr());
        }
    });

    py::class_<Epc>(m, "Epc")
        .def_property_readonly("scheme", [](const Epc& e) { return std::string(scheme_name(e.scheme)); })
        .def_readonly("declared_bits", &Epc::declared_bits)
        .def_property_readonly("value", [](const Epc& e) { return optional_int(e.value); })
        .def_property_readonly("serial_number", [](const Epc& e) { return optional_int(e.serial_number); })
        .def_readonly("uri", &Epc::uri)
        .def_property_readonly("company_prefix",
                               [](const Epc& e) { return e.tag ? std::optional(e.tag->company_prefix) : std::nullopt; })
        .def("__str__", &Epc::display)
        .def("__repr__", [](const Epc& e) { return "<Epc " + e.display() + ">"; })
        .def("__eq__", [](const Epc& a, const Epc& b) { return a == b; });

    m.def("parse_tag_uri", [](const std::string& text) { return parse_tag_uri(text); });
    m.def(
        "raw_epc",
        [](const py::int_& value, unsigned declared_bits, std::optional<py::int_> serial) {
            std::optional<EpcValue> s;
            if (serial)
                s = from_pyint(*serial);
            return Epc::raw(from_pyint(value), declared_bits, s);
        },
        py::arg("value"), py::arg("declared_bits") = 0, py::arg("serial") = py::none());
    m.def("render_tag_uri", &render_tag_uri);

    m.def(
        "encode_sgtin96",
        [](std::uint32_t filter, std::uint32_t partition, std::uint64_t company, std::uint64_t item,
           std::uint64_t serial) { return to_pyint(encode_sgtin96({filter, partition, company, item, serial})); },
        py::arg("filter"), py::arg("partition"), py::arg("company_prefix"), py::arg("item_reference"),
        py::arg("serial"));
    m.def("decode_sgtin96", [](const py::int_& value) {
        const auto f = decode_sgtin96(from_pyint(value));
        py::dict d;
        d["filter"] = f.filter;
        d["partition"] = f.partition;
        d["company_prefix"] = f.company_prefix;
        d["item_reference"] = f.item_reference;
        d["serial"] = f.serial;
        return d;
    });
    m.def("bit_length", [](const py::int_& v) { return bit_length(from_pyint(v)); });

    m.def("parse_ipv6", [](const std::string& text) { return to_pyint(to_epc_value(parse_ipv6(text).value())); });
    m.def("format_ipv6", [](const py::object& addr) { return format_canonical(address_from(addr)); });

    m.def("plan", [](const Epc& epc) {
        const auto p = plan(epc);
        py::dict d;
        d["source"] = p.source == PayloadSource::full_epc ? "full_epc" : "serial_number";
        d["input_bits"] = p.input_bits;
        d["prefix_bits"] = p.prefix_bits;
        d["payload"] = to_pyint(plan_payload(epc, p));
        return d;
    });
    m.attr("methods") = [] {
        py::list names;
        for (auto id : kAllMethods)
            names.append(std::string(method_name(id)));
        return py::tuple(names);
    }();
    m.def(
        "derive",
        [](const Epc& epc, const py::object& anchor, const std::string& method, std::uint64_t salt,
           const std::string& standard) {
            return format_canonical(derive(method_from(method), epc, address_from(anchor), derive_options(salt, standard)));
        },
        py::arg("epc"), py::arg("anchor"), py::arg("method") = "hybrid_ons", py::arg("salt") = 0,
        py::arg("standard") = "epc");

    py::class_<OnsRegistry>(m, "OnsRegistry")
        .def(py::init([](const std::vector<std::pair<std::string, std::string>>& entries) {
            std::vector<OnsRecord> records;
            for (const auto& [pattern, ip] : entries)
                records.push_back({pattern, parse_ipv6(ip)});
            return OnsRegistry(std::move(records));
        }))
        .def_static("load", [](const std::string& path) { return load_registry(path); })
        .def_static("from_json", [](const std::string& text) { return parse_registry(text); })
        .def("resolve", [](const OnsRegistry& r, const Epc& epc) { return format_canonical(r.resolve(epc)); })
        .def("records",
             [](const OnsRegistry& r) {
                 std::vector<std::pair<std::string, std::string>> out;
                 for (const auto& rec : r.records())
                     out.emplace_back(rec.pattern, format_canonical(rec.ons_ip));
                 return out;
             })
        .def("__len__", &OnsRegistry::size);

    m.def(
        "generate_population",
        [](const std::string& scheme, std::size_t count, std::uint64_t seed, std::optional<unsigned> width,
           bool fixed_width) { return generate_population({scheme_from(scheme), count, seed, width, fixed_width}); },
        py::arg("scheme") = "raw", py::arg("count") = 1, py::arg("seed") = 0, py::arg("width") = py::none(),
        py::arg("fixed_width") = false);

    m.def(
        "evaluate",
        [](const std::string& method, const std::vector<Epc>& population, const OnsRegistry& registry,
           std::uint64_t salt, const std::string& standard, unsigned threads, std::optional<std::size_t> max_pairs,
           bool include_addresses) {
            BenchReport report;
            {
                py::gil_scoped_release release;
                report = evaluate(method_from(method), population, registry,
                                  {derive_options(salt, standard), threads, max_pairs});
            }
            const auto text = to_json(report, population, include_addresses).dump();
            return py::module_::import("json").attr("loads")(text);
        },
        py::arg("method"), py::arg("population"), py::arg("registry"), py::arg("salt") = 0,
        py::arg("standard") = "epc", py::arg("threads") = 1, py::arg("max_pairs") = py::none(),
        py::arg("include_addresses") = false);
}
