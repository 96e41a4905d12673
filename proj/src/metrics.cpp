#include "minebench/metrics.hpp"

#include <cmath>
#include <sstream>

#include <json.hpp>

namespace minebench {

std::string MetricsReport::size_ratio_rounded() const {
    double rounded = std::round(size_ratio.value() * 10.0) / 10.0;
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(1);
    os << rounded;
    return os.str();
}

std::string MetricsReport::to_json() const {
    nlohmann::ordered_json doc;
    doc["tp"] = counts.tp;
    doc["tn"] = counts.tn;
    doc["fp"] = counts.fp;
    doc["fn"] = counts.fn;
    doc["accuracy"] = accuracy.value();
    doc["precision"] = precision.value();
    doc["recall"] = recall.value();
    doc["f1"] = f1.value();
    doc["mined_size"] = mined_size;
    doc["ground_truth_size"] = ground_truth_size;
    doc["size_ratio"] = size_ratio.value();
    doc["size_ratio_exact"] = size_ratio.exact_string();
    doc["size_ratio_rounded"] = size_ratio_rounded();
    return doc.dump();
}

ConfusionCounts confusion(const AccessMatrix& original, const AccessMatrix& reconstructed) {
    if (original.n_subjects() != reconstructed.n_subjects() ||
        original.n_objects() != reconstructed.n_objects()) {
        throw DimensionMismatch("matrices have different dimensions");
    }
    ConfusionCounts c;
    for (int i = 0; i < original.n_subjects(); ++i) {
        for (int j = 0; j < original.n_objects(); ++j) {
            bool truth = original.at(i, j) != 0;
            bool mined = reconstructed.at(i, j) != 0;
            if (truth && mined) ++c.tp;
            else if (!truth && !mined) ++c.tn;
            else if (!truth && mined) ++c.fp;
            else ++c.fn;
        }
    }
    return c;
}

MetricsReport score(const ConfusionCounts& counts, std::int64_t mined_size,
                    std::int64_t ground_truth_size) {
    if (counts.tp < 0 || counts.tn < 0 || counts.fp < 0 || counts.fn < 0 || counts.total() == 0) {
        throw InvalidCounts("confusion counts must be non-negative and not all zero");
    }
    if (mined_size < 0) throw InvalidCounts("mined policy size must be non-negative");
    if (ground_truth_size < 1) throw InvalidCounts("ground-truth policy size must be >= 1");

    MetricsReport r;
    r.counts = counts;
    r.mined_size = mined_size;
    r.ground_truth_size = ground_truth_size;
    r.accuracy = Fraction(counts.tp + counts.tn, counts.total());

    if (counts.tp + counts.fp == 0) {
        r.precision = counts.tp + counts.fn == 0 ? Fraction::whole(1) : Fraction::whole(0);
    } else {
        r.precision = Fraction(counts.tp, counts.tp + counts.fp);
    }
    if (counts.tp + counts.fn == 0) {
        r.recall = Fraction::whole(1);
    } else {
        r.recall = Fraction(counts.tp, counts.tp + counts.fn);
    }
    Fraction sum = r.precision + r.recall;
    if (sum.num() == 0) {
        r.f1 = Fraction::whole(0);
    } else {
        r.f1 = Fraction::whole(2) * r.precision * r.recall / sum;
    }
    r.size_ratio = Fraction(mined_size, ground_truth_size);
    return r;
}

MetricsReport grade(const Scenario& scenario, const PolicySet& mined, Semantics sem) {
    AccessMatrix reconstructed = reconstruct_acm(mined, scenario.subjects, scenario.objects, sem);
    return score(confusion(scenario.acm, reconstructed),
                 static_cast<std::int64_t>(mined.rules.size()),
                 static_cast<std::int64_t>(scenario.ground_truth.rules.size()));
}

} // namespace minebench
