#include "chenflow/vector_field.hpp"

#include <sstream>

#include "chenflow/errors.hpp"

namespace chenflow {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, sep)) out.push_back(field);
    return out;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

template <typename S>
DrivenSystem<S> parse_system(std::istream& in) {
    int n = -1, d = -1;
    std::vector<std::string> x0_fields;
    std::map<int, std::vector<std::string>> field_exprs;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) throw config_error("system line needs 'key: value'");
        const std::string key = trim(line.substr(0, colon));
        const std::string value = trim(line.substr(colon + 1));
        if (key == "n") {
            n = std::stoi(value);
        } else if (key == "d") {
            d = std::stoi(value);
        } else if (key == "x0") {
            x0_fields = split(value, ';');
        } else if (key.size() > 1 && key[0] == 'V') {
            field_exprs[std::stoi(key.substr(1))] = split(value, ';');
        } else {
            throw config_error("unknown system key '" + key + "'");
        }
    }
    if (n < 1 || d < 0) throw config_error("system file must set n >= 1 and d >= 0");
    if (static_cast<int>(x0_fields.size()) != n)
        throw config_error("x0 must have n components");
    DrivenSystem<S> system;
    for (const auto& f : x0_fields) system.x0.push_back(parse_scalar<S>(trim(f)));
    system.fields.resize(d + 1, PolynomialVectorField<S>::zero(n));
    for (int i = 0; i <= d; ++i) {
        auto it = field_exprs.find(i);
        if (it == field_exprs.end()) throw config_error("missing field V" + std::to_string(i));
        if (static_cast<int>(it->second.size()) != n)
            throw config_error("V" + std::to_string(i) + " must have n components");
        for (int j = 0; j < n; ++j)
            system.fields[i].components[j] = parse_polynomial<S>(trim(it->second[j]), n);
    }
    for (const auto& [idx, exprs] : field_exprs)
        if (idx < 0 || idx > d) throw config_error("field index out of range in system file");
    system.validate();
    return system;
}

template DrivenSystem<Rat> parse_system<Rat>(std::istream&);
template DrivenSystem<double> parse_system<double>(std::istream&);

DrivenSystem<double> to_double_system(const DrivenSystem<Rat>& system) {
    DrivenSystem<double> out;
    for (const Rat& x : system.x0) out.x0.push_back(scalar_to_double(x));
    for (const auto& field : system.fields) {
        PolynomialVectorField<double> f;
        for (const auto& comp : field.components) {
            Polynomial<double> p(comp.variables());
            for (const auto& [m, c] : comp.terms()) p.add_term(m, scalar_to_double(c));
            f.components.push_back(std::move(p));
        }
        out.fields.push_back(std::move(f));
    }
    return out;
}

}  // namespace chenflow
