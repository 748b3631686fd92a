#include "liecalc/jsonio.hpp"

namespace liecalc {

Json rv_to_json(const RingValue& v) {
    switch (v.backend()) {
        case Backend::Rational: return v.rat().get_str();
        case Backend::Float: return v.flt();
        case Backend::PrimeField: return v.pf().residue;
    }
    throw backend_error("unknown backend");
}

RingValue rv_from_json(const Json& j, const BackendTag& tag) {
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        mpq_class q;
        if (q.set_str(s, 10) != 0 || q.get_den() == 0)
            throw backend_error("bad rational literal: " + s);
        q.canonicalize();
        return RingValue::from_mpq(q, tag);
    }
    if (j.is_number_integer())
        return RingValue::from_mpq(mpq_class(j.get<long>()), tag);
    if (j.is_number_float()) {
        if (tag.kind != Backend::Float)
            throw backend_error("float literal on an exact backend");
        return RingValue::floating(j.get<double>());
    }
    throw backend_error("bad ring value in JSON");
}

Json cubic_to_json(const CubicScalar& a) {
    Json j;
    j["n"] = a.params()->order;
    Json t = Json::array();
    for (const auto& tk : a.params()->t) t.push_back(rv_to_json(tk));
    j["t"] = std::move(t);
    Json carrier = Json::array();
    for (int k = 1; k <= a.params()->order; ++k)
        if (a.carrier() & dir_bit(k)) carrier.push_back(k);
    j["carrier"] = std::move(carrier);
    Json coeffs = Json::object();
    for (std::size_t r = 0; r < a.raw().size(); ++r) {
        const SubsetMask m = mask_expand(a.carrier(), static_cast<std::uint32_t>(r));
        coeffs[subset_name(m)] = rv_to_json(a.coeff(m));
    }
    j["coeffs"] = std::move(coeffs);
    return j;
}

CubicScalar cubic_from_json(const Json& j, const BackendTag& tag) {
    if (!j.is_object() || !j.contains("n") || !j.contains("t") || !j.contains("carrier") ||
        !j.contains("coeffs"))
        throw backend_error("cubic JSON needs n, t, carrier, coeffs");
    const int n = j["n"].get<int>();
    std::vector<RingValue> t;
    for (const auto& tk : j["t"]) t.push_back(rv_from_json(tk, tag));
    auto params = CubicParams::make(n, std::move(t), tag);
    SubsetMask carrier = 0;
    for (const auto& k : j["carrier"]) {
        const int dir = k.get<int>();
        if (dir < 1 || dir > n) throw backend_error("carrier direction out of range");
        carrier |= dir_bit(dir);
    }
    const std::size_t dim = std::size_t{1} << mask_size(carrier);
    if (j["coeffs"].size() != dim)
        throw backend_error("coeffs must have one entry per subset of the carrier");
    CubicScalar out = CubicScalar::zero(params, carrier);
    for (const auto& [key, val] : j["coeffs"].items()) {
        auto m = subset_from_name(key);
        if (!m || (*m & ~carrier)) throw backend_error("bad coefficient subset: " + key);
        out = out.with_coeff(*m, rv_from_json(val, tag));
    }
    return out;
}

Json report_to_json(const LawReport& r) {
    Json j;
    j["law"] = r.law;
    j["samples"] = r.samples;
    j["failures"] = r.failures;
    if (r.counterexample.empty())
        j["counterexample"] = nullptr;
    else
        j["counterexample"] = r.counterexample;
    return j;
}

}  // namespace liecalc
