#include "sojourn_lab/field_json.hpp"

#include "sojourn_lab/errors.hpp"

namespace sojourn_lab {
namespace {

using json = nlohmann::ordered_json;

json space_to_json(Space const& space)
{
    json out;
    switch (space.kind())
    {
        case SpaceKind::circle:
            out["kind"] = "circle";
            break;
        case SpaceKind::sphere:
            out["kind"] = "sphere";
            out["dim"] = space.dim();
            break;
        case SpaceKind::grid:
            out["kind"] = "grid";
            out["rows"] = space.rows();
            out["cols"] = space.cols();
            break;
    }
    return out;
}

Space space_from_json(json const& doc)
{
    auto const kind = doc.at("kind").get<std::string>();
    if (kind == "circle")
        return Space::circle();
    if (kind == "sphere")
        return Space::sphere(doc.at("dim").get<int>());
    if (kind == "grid")
        return Space::grid(doc.at("rows").get<int>(), doc.at("cols").get<int>());
    throw ConfigError("unknown space kind '" + kind + "'");
}

}  // namespace

json field_to_json(FieldRealization const& field)
{
    auto const& prov = field.provenance();
    json doc;
    doc["generator"] = prov.generator;
    json params = json::object();
    for (auto const& [name, value] : prov.parameters)
        params[name] = value;
    doc["parameters"] = std::move(params);
    doc["seed"] = prov.seed;
    doc["stream"] = prov.stream;
    doc["space"] = space_to_json(field.space());

    json payload;
    if (auto const* k = std::get_if<KernelPayload>(&field.payload()))
    {
        payload["type"] = "kernel";
        payload["kernel_exp"] = k->kernel.exponent;
        payload["summits"] = k->summits;
        payload["bump"] = k->bump;
        payload["bias_center"] = k->bias_center;
    }
    else if (auto const* c = std::get_if<CircleGridPayload>(&field.payload()))
    {
        payload["type"] = "circle-grid";
        payload["values"] = c->values;
    }
    else
    {
        auto const& m = std::get<MatrixPayload>(field.payload());
        payload["type"] = "matrix";
        payload["rows"] = m.rows;
        payload["cols"] = m.cols;
        payload["entries"] = m.entries;
    }
    doc["payload"] = std::move(payload);
    return doc;
}

FieldRealization field_from_json(json const& doc)
{
    try
    {
        Provenance prov;
        prov.generator = doc.at("generator").get<std::string>();
        for (auto const& [name, value] : doc.at("parameters").items())
            prov.parameters.emplace_back(name, value.get<double>());
        prov.seed = doc.at("seed").get<std::uint64_t>();
        prov.stream = doc.at("stream").get<std::uint64_t>();
        Space const space = space_from_json(doc.at("space"));

        auto const& payload = doc.at("payload");
        auto const type = payload.at("type").get<std::string>();
        if (type == "kernel")
        {
            KernelPayload k;
            k.dim = space.dim();
            k.kernel.exponent = payload.at("kernel_exp").get<double>();
            k.summits = payload.at("summits").get<std::vector<double>>();
            k.bump = payload.at("bump").get<double>();
            k.bias_center = payload.at("bias_center").get<std::vector<double>>();
            return FieldRealization{space, std::move(k), std::move(prov)};
        }
        if (type == "circle-grid")
            return FieldRealization{space, CircleGridPayload{payload.at("values").get<std::vector<double>>()},
                                    std::move(prov)};
        if (type == "matrix")
            return FieldRealization{space,
                                    MatrixPayload{payload.at("rows").get<int>(), payload.at("cols").get<int>(),
                                                  payload.at("entries").get<std::vector<double>>()},
                                    std::move(prov)};
        throw ConfigError("unknown payload type '" + type + "'");
    }
    catch (json::exception const& e)
    {
        throw ConfigError(std::string("malformed field document: ") + e.what());
    }
}

}  // namespace sojourn_lab
