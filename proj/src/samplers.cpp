#include "permld/samplers.hpp"

#include <sstream>

namespace permld {

namespace {

std::vector<int> parseIntList(const std::string& text, const char* what) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            std::size_t used = 0;
            const int v = std::stoi(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(v);
        } catch (const std::exception&) {
            throw DomainError(std::string("bad ") + what + " entry '" + token + "'");
        }
    }
    if (out.empty()) throw DomainError(std::string("empty ") + what + " list");
    return out;
}

double parseDouble(const std::string& text, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument(text);
        return v;
    } catch (const std::exception&) {
        throw DomainError(std::string("bad ") + what + " value '" + text + "'");
    }
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(15);
    os << v;
    return os.str();
}

} // namespace

SamplerSpec SamplerSpec::parse(const std::string& text) {
    SamplerSpec spec;
    if (text == "uniform") {
        spec.kind = Kind::Uniform;
        return spec;
    }
    if (text == "cyclic") {
        spec.kind = Kind::Cyclic;
        return spec;
    }
    if (text.rfind("ewens:", 0) == 0) {
        spec.kind = Kind::Ewens;
        spec.theta = parseDouble(text.substr(6), "theta");
        if (!(spec.theta >= 0.0)) throw DomainError("ewens needs theta >= 0");
        return spec;
    }
    if (text.rfind("class:", 0) == 0) {
        spec.kind = Kind::Class;
        spec.parts = parseIntList(text.substr(6), "cycle type");
        for (int p : spec.parts) {
            if (p < 1) throw DomainError("cycle lengths must be >= 1");
        }
        return spec;
    }
    if (text.rfind("mixture:", 0) == 0) {
        const std::string rest = text.substr(8);
        const auto comma = rest.find(',');
        if (comma == std::string::npos) {
            throw DomainError("mixture law is mixture:X,C");
        }
        spec.kind = Kind::Mixture;
        spec.x = parseDouble(rest.substr(0, comma), "mixture x");
        spec.c = parseDouble(rest.substr(comma + 1), "mixture c");
        return spec;
    }
    if (text.rfind("point:", 0) == 0) {
        spec.kind = Kind::Point;
        spec.pointWord = parseIntList(text.substr(6), "point word");
        Permutation check(spec.pointWord); // reject non-bijections at parse time
        return spec;
    }
    if (text.rfind("t(", 0) == 0 && text.back() == ')') {
        spec.kind = Kind::TWrap;
        spec.inner = std::make_shared<SamplerSpec>(
            parse(text.substr(2, text.size() - 3)));
        return spec;
    }
    throw DomainError("unrecognized law '" + text + "'");
}

std::string SamplerSpec::name() const {
    switch (kind) {
        case Kind::Uniform: return "uniform";
        case Kind::Cyclic: return "cyclic";
        case Kind::Ewens: return "ewens:" + fmt(theta);
        case Kind::Class: {
            std::string s = "class:";
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(parts[i]);
            }
            return s;
        }
        case Kind::Mixture: return "mixture:" + fmt(x) + "," + fmt(c);
        case Kind::Point: {
            std::string s = "point:";
            for (std::size_t i = 0; i < pointWord.size(); ++i) {
                if (i) s += ',';
                s += std::to_string(pointWord[i]);
            }
            return s;
        }
        case Kind::TWrap: return "t(" + inner->name() + ")";
    }
    throw DomainError("corrupt SamplerSpec");
}

std::vector<int> resolveClassParts(const std::vector<int>& parts, int n) {
    long long sum = 0;
    for (int p : parts) sum += p;
    if (sum > n) {
        throw InvalidCycleType("cycle type sums to " + std::to_string(sum) +
                               " > n = " + std::to_string(n));
    }
    std::vector<int> full = parts;
    for (long long i = sum; i < n; ++i) full.push_back(1);
    return full;
}

} // namespace permld
