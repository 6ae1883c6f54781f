#include "storyboard/code_model.hpp"

#include "storyboard/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>

namespace storyboard {

using nlohmann::json;

std::string_view to_string(ClassKind kind)
{
    switch (kind) {
    case ClassKind::activity: return "activity";
    case ClassKind::fragment: return "fragment";
    case ClassKind::inner: return "inner";
    case ClassKind::plain: return "plain";
    }
    return "plain";
}

const MethodModel* ClassModel::find_method(std::string_view n) const
{
    for (const auto& m : methods) {
        if (m.name == n) {
            return &m;
        }
    }
    return nullptr;
}

CodeModel::CodeModel(std::vector<ClassModel> classes)
    : classes_(std::move(classes))
{
    std::vector<std::string> dupes;
    for (std::size_t i = 0; i < classes_.size(); ++i) {
        if (!index_.emplace(classes_[i].name, i).second) {
            dupes.push_back("duplicate class " + classes_[i].name);
        }
    }
    if (!dupes.empty()) {
        throw LinkError(std::move(dupes));
    }
}

const ClassModel* CodeModel::find(std::string_view name) const
{
    auto it = index_.find(name);
    return it == index_.end() ? nullptr : &classes_[it->second];
}

const MethodModel* CodeModel::find_method(const MethodRef& ref) const
{
    const auto* cls = find(ref.cls);
    return cls ? cls->find_method(ref.method) : nullptr;
}

namespace {

class SchemaReader {
public:
    explicit SchemaReader(const std::string& file) : file_(file) {}

    [[noreturn]] void fail(const std::string& where,
                           const std::string& what) const
    {
        throw ParseError(file_, 0, where + ": " + what);
    }

    std::string str(const json& obj, const char* key,
                    const std::string& where) const
    {
        auto it = obj.find(key);
        if (it == obj.end() || !it->is_string()) {
            fail(where, std::string("missing string field '") + key + "'");
        }
        return it->get<std::string>();
    }

    std::optional<std::string> opt_str(const json& obj, const char* key,
                                       const std::string& where) const
    {
        auto it = obj.find(key);
        if (it == obj.end() || it->is_null()) {
            return std::nullopt;
        }
        if (!it->is_string()) {
            fail(where, std::string("field '") + key + "' must be a string");
        }
        return it->get<std::string>();
    }

    MethodRef method_ref(const json& obj, const std::string& where) const
    {
        if (!obj.is_object()) {
            fail(where, "call reference must be an object");
        }
        return {str(obj, "class", where), str(obj, "method", where)};
    }

    ValueRef value(const json& v, const std::string& where) const
    {
        if (v.is_string()) {
            return ValueRef::literal(v.get<std::string>());
        }
        if (!v.is_object() || v.size() != 1) {
            fail(where, "value must be a string or a one-key object");
        }
        if (v.contains("literal")) {
            return ValueRef::literal(str(v, "literal", where));
        }
        if (v.contains("resource")) {
            auto ref = str(v, "resource", where);
            if (!ref.starts_with('@')) {
                fail(where, "resource reference must start with '@'");
            }
            return ValueRef::resource(ref);
        }
        if (v.contains("call")) {
            return ValueRef::call(method_ref(v["call"], where));
        }
        fail(where, "unknown value form " + v.dump());
    }

    Statement statement(const json& s, const std::string& where) const
    {
        if (!s.is_object()) {
            fail(where, "statement must be an object");
        }
        auto op = str(s, "op", where);
        if (op == "start_activity") {
            stmt::StartActivity st;
            auto target = opt_str(s, "target", where);
            auto intent = opt_str(s, "intent", where);
            if (target.has_value() == intent.has_value()) {
                fail(where, "start_activity needs exactly one of 'target' "
                            "or 'intent'");
            }
            st.target = target ? *target : *intent;
            st.target_is_var = intent.has_value();
            auto api = opt_str(s, "api", where).value_or("startActivity");
            if (api == "startActivity") {
                st.api = StartApi::start_activity;
            }
            else if (api == "startActivityForResult") {
                st.api = StartApi::start_activity_for_result;
            }
            else if (api == "startActivityIfNeeded") {
                st.api = StartApi::start_activity_if_needed;
            }
            else {
                fail(where, "unknown start api '" + api + "'");
            }
            return st;
        }
        if (op == "new_intent") {
            return stmt::NewIntent{str(s, "var", where),
                                   str(s, "target", where)};
        }
        if (op == "fragment_commit") {
            stmt::FragmentCommit st{str(s, "fragment", where),
                                    FragmentVia::replace};
            auto via = opt_str(s, "via", where).value_or("replace");
            if (via == "add") {
                st.via = FragmentVia::add;
            }
            else if (via != "replace") {
                fail(where, "fragment_commit via must be replace or add");
            }
            return st;
        }
        if (op == "set_adapter") {
            stmt::SetAdapter st;
            st.view_var = opt_str(s, "view", where).value_or("");
            st.view_type = str(s, "view_type", where);
            auto it = s.find("source");
            if (it == s.end() || !it->is_object() || it->size() != 1) {
                fail(where, "set_adapter needs a one-key 'source' object");
            }
            const auto& src = *it;
            if (src.contains("fragment")) {
                st.source = stmt::SetAdapter::Source::fragment;
                st.source_name = str(src, "fragment", where);
            }
            else if (src.contains("layout")) {
                st.source = stmt::SetAdapter::Source::layout;
                st.source_name = str(src, "layout", where);
            }
            else if (src.contains("var")) {
                st.source = stmt::SetAdapter::Source::var;
                st.source_name = str(src, "var", where);
            }
            else {
                fail(where, "set_adapter source must be fragment, layout "
                            "or var");
            }
            return st;
        }
        if (op == "add_view") {
            return stmt::AddView{str(s, "parent", where),
                                 str(s, "child", where)};
        }
        if (op == "inflate") {
            return stmt::Inflate{str(s, "layout", where),
                                 opt_str(s, "var", where).value_or(""),
                                 opt_str(s, "into", where)};
        }
        if (op == "new_component") {
            return stmt::NewComponent{str(s, "var", where),
                                      str(s, "tag", where)};
        }
        if (op == "set_attr") {
            if (!s.contains("value")) {
                fail(where, "set_attr without value");
            }
            return stmt::SetAttr{str(s, "var", where), str(s, "attr", where),
                                 value(s["value"], where)};
        }
        if (op == "call") {
            return stmt::Call{{str(s, "class", where), str(s, "method", where)}};
        }
        if (op == "return_value") {
            if (!s.contains("value")) {
                fail(where, "return_value without value");
            }
            return stmt::ReturnValue{value(s["value"], where)};
        }
        fail(where, "unknown op '" + op + "'");
    }

    ClassModel cls(const json& c, const std::string& where) const
    {
        if (!c.is_object()) {
            fail(where, "class entry must be an object");
        }
        ClassModel out;
        out.name = str(c, "name", where);
        auto here = where + " (" + out.name + ")";
        out.outer_class = opt_str(c, "outer", here);
        out.superclass = opt_str(c, "superclass", here);
        out.layout = opt_str(c, "layout", here);
        out.source = opt_str(c, "source", here);
        out.undecompiled = c.value("undecompiled", false);
        if (auto kind = opt_str(c, "kind", here)) {
            if (*kind == "fragment") {
                out.fragment_hint = true;
            }
            else if (*kind == "inner" && !out.outer_class) {
                fail(here, "kind inner requires 'outer'");
            }
            else if (*kind != "plain" && *kind != "inner"
                     && *kind != "activity") {
                fail(here, "unknown kind '" + *kind + "'");
            }
        }
        if (auto it = c.find("methods"); it != c.end()) {
            if (!it->is_array()) {
                fail(here, "'methods' must be an array");
            }
            std::set<std::string> seen;
            for (std::size_t mi = 0; mi < it->size(); ++mi) {
                const auto& m = (*it)[mi];
                auto mwhere = here + " methods[" + std::to_string(mi) + "]";
                if (!m.is_object()) {
                    fail(mwhere, "method must be an object");
                }
                MethodModel mm;
                mm.name = str(m, "name", mwhere);
                if (!seen.insert(mm.name).second) {
                    fail(mwhere, "duplicate method '" + mm.name + "'");
                }
                if (auto st = m.find("statements"); st != m.end()) {
                    if (!st->is_array()) {
                        fail(mwhere, "'statements' must be an array");
                    }
                    for (std::size_t si = 0; si < st->size(); ++si) {
                        mm.statements.push_back(statement(
                                (*st)[si], mwhere + " statements["
                                                   + std::to_string(si) + "]"));
                    }
                }
                out.methods.push_back(std::move(mm));
            }
        }
        if (out.undecompiled && !out.methods.empty()) {
            fail(here, "undecompiled class cannot carry methods");
        }
        return out;
    }

private:
    const std::string& file_;
};

long line_of_offset(std::string_view text, std::size_t offset)
{
    offset = std::min(offset, text.size());
    return 1 + static_cast<long>(
                   std::count(text.begin(), text.begin() + offset, '\n'));
}

} // namespace

std::vector<ClassModel> parse_code_model(std::string_view text,
                                         const std::string& file)
{
    json doc;
    try {
        doc = json::parse(text);
    }
    catch (const json::parse_error& e) {
        throw ParseError(file, line_of_offset(text, e.byte), e.what());
    }
    SchemaReader reader(file);
    if (!doc.is_object() || !doc.contains("classes")
        || !doc["classes"].is_array()) {
        reader.fail("document", "expected an object with a 'classes' array");
    }
    std::vector<ClassModel> out;
    const auto& classes = doc["classes"];
    out.reserve(classes.size());
    for (std::size_t i = 0; i < classes.size(); ++i) {
        out.push_back(reader.cls(classes[i],
                                 "classes[" + std::to_string(i) + "]"));
    }
    return out;
}

namespace {

std::string quote(std::string_view s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + "\"";
}

std::string render_value(const ValueRef& v, const std::string& self)
{
    switch (v.kind) {
    case ValueRef::Kind::literal: return quote(v.text);
    case ValueRef::Kind::resource: {
        // @string/app_name -> R.string.app_name
        auto slash = v.text.find('/');
        if (slash == std::string::npos) {
            return v.text;
        }
        return "R." + v.text.substr(1, slash - 1) + "."
               + v.text.substr(slash + 1);
    }
    case ValueRef::Kind::call:
        return (v.callee.cls == self ? std::string() : v.callee.cls + ".")
               + v.callee.method + "()";
    }
    return {};
}

std::string setter_name(std::string_view attr)
{
    std::string out = "set";
    bool upper = true;
    for (char c : attr) {
        if (c == '_' || c == ':') {
            upper = true;
            continue;
        }
        out += upper ? static_cast<char>(
                               std::toupper(static_cast<unsigned char>(c)))
                     : c;
        upper = false;
    }
    return out;
}

std::string view_expr(const std::string& ref)
{
    if (ref == "root") {
        return "root";
    }
    if (ref.starts_with("@id/")) {
        return "findViewById(R.id." + ref.substr(4) + ")";
    }
    return ref;
}

struct StatementPrinter {
    const std::string& self;
    std::ostringstream& os;

    void operator()(const stmt::StartActivity& s) const
    {
        static constexpr const char* apis[] = {
                "startActivity", "startActivityForResult",
                "startActivityIfNeeded"};
        os << apis[static_cast<int>(s.api)] << "(";
        if (s.target_is_var) {
            os << s.target;
        }
        else {
            os << "new Intent(this, " << s.target << ".class)";
        }
        os << ");";
    }
    void operator()(const stmt::NewIntent& s) const
    {
        os << "Intent " << s.var << " = new Intent(this, " << s.target
           << ".class);";
    }
    void operator()(const stmt::FragmentCommit& s) const
    {
        os << "getSupportFragmentManager().beginTransaction()."
           << (s.via == FragmentVia::add ? "add" : "replace")
           << "(R.id.content, new " << s.fragment << "()).commit();";
    }
    void operator()(const stmt::SetAdapter& s) const
    {
        auto view = s.view_var.empty() ? "view" : s.view_var;
        os << "((" << s.view_type << ") " << view << ").setAdapter(";
        switch (s.source) {
        case stmt::SetAdapter::Source::fragment:
            os << "new FragmentPagerAdapter(getSupportFragmentManager(), new "
               << s.source_name << "())";
            break;
        case stmt::SetAdapter::Source::layout:
            os << "new ArrayAdapter(this, R.layout." << s.source_name
               << ", data)";
            break;
        case stmt::SetAdapter::Source::var: os << s.source_name; break;
        }
        os << ");";
    }
    void operator()(const stmt::AddView& s) const
    {
        os << view_expr(s.parent) << ".addView(" << s.child << ");";
    }
    void operator()(const stmt::Inflate& s) const
    {
        if (!s.var.empty()) {
            os << "View " << s.var << " = ";
        }
        os << "getLayoutInflater().inflate(R.layout." << s.layout << ", "
           << (s.into ? view_expr(*s.into) : "null") << ");";
    }
    void operator()(const stmt::NewComponent& s) const
    {
        os << s.tag << " " << s.var << " = new " << s.tag << "(this);";
    }
    void operator()(const stmt::SetAttr& s) const
    {
        os << s.var << "." << setter_name(s.attr) << "("
           << render_value(s.value, self) << ");";
    }
    void operator()(const stmt::Call& s) const
    {
        if (s.callee.cls != self) {
            os << s.callee.cls << ".";
        }
        os << s.callee.method << "();";
    }
    void operator()(const stmt::ReturnValue& s) const
    {
        os << "return " << render_value(s.value, self) << ";";
    }
};

} // namespace

std::string render_class_listing(const ClassModel& cls)
{
    std::ostringstream os;
    os << "public class " << cls.name;
    if (cls.superclass) {
        os << " extends " << *cls.superclass;
    }
    os << " {";
    if (cls.outer_class) {
        os << " // inner class of " << *cls.outer_class;
    }
    os << "\n";
    if (cls.undecompiled) {
        os << "    // decompilation failed\n";
    }
    for (std::size_t i = 0; i < cls.methods.size(); ++i) {
        const auto& m = cls.methods[i];
        if (i > 0) {
            os << "\n";
        }
        os << "    void " << m.name << "() {\n";
        for (const auto& s : m.statements) {
            os << "        ";
            std::visit(StatementPrinter{cls.name, os}, s);
            os << "\n";
        }
        os << "    }\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace storyboard
