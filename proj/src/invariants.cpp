#include "dsg/invariants.hpp"

namespace dsg {

namespace {

std::string arc_tag(const ArcDir& a) {
    return "(" + std::to_string(a.tail) + "->" + std::to_string(a.head) + ")";
}

}  // namespace

std::vector<std::string> check_label_invariants(const Structure& s, Variant var) {
    std::vector<std::string> out;
    const __int128 p = s.config().alpha.num();
    const __int128 q = s.config().alpha.den();
    const bool truncated = s.config().threshold_T.has_value();
    const long long T = truncated ? *s.config().threshold_T : 0;

    s.for_each_dir([&](const ArcDir& a) {
        const long long du = s.edeg(a.tail), dv = s.edeg(a.head);
        const long long lu = a.label_tail, lv = a.label_head;
        if (truncated && (lu > T || lv > T))
            out.push_back("label above threshold on " + arc_tag(a));
        if (var == Variant::amortized) {
            if (lu < lv - 1)
                out.push_back("order: lab_u < lab_v - 1 on " + arc_tag(a));
            if (q * dv > (q + p) * lv + q)
                out.push_back("head: d(v) > (1+a)lab_v + 1 on " + arc_tag(a));
            if (q * lu > (q + p) * (du + 1))
                out.push_back("tail: lab_u > (1+a)(d(u)+1) on " + arc_tag(a));
            if (q * q * dv > (q + p) * (q + p) * du + 3 * q * q + 3 * p * q)
                out.push_back("local: d(v) > (1+a)^2 d(u) + 3 + 3a on " + arc_tag(a));
        } else {
            if (q * lv > (q + p) * (lu + 1))
                out.push_back("order: lab_v > (1+a)(lab_u+1) on " + arc_tag(a));
            if (q * dv > (q + p) * (lv + 1))
                out.push_back("head: d(v) > (1+a)(lab_v+1) on " + arc_tag(a));
            if (q * lu > (q + p) * (du + 1))
                out.push_back("tail: lab_u > (1+a)(d(u)+1) on " + arc_tag(a));
            if (q * q * q * dv >
                (q + p) * (q + p) * (q + p) * du + 3 * q * q * q + 10 * p * q * q)
                out.push_back("local: d(v) > (1+a)^3 d(u) + 3 + 10a on " + arc_tag(a));
        }
    });
    return out;
}

std::vector<std::string> check_all(const Structure& s, Variant var) {
    std::vector<std::string> out = s.check_consistency();
    auto labels = check_label_invariants(s, var);
    out.insert(out.end(), labels.begin(), labels.end());
    return out;
}

}  // namespace dsg
