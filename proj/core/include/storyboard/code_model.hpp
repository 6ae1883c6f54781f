#ifndef STORYBOARD_CODE_MODEL_HPP
#define STORYBOARD_CODE_MODEL_HPP

#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace storyboard {

struct MethodRef {
    std::string cls;
    std::string method;

    std::string str() const { return cls + "." + method; }

    friend auto operator<=>(const MethodRef&, const MethodRef&) = default;
    friend bool operator==(const MethodRef&, const MethodRef&) = default;
};

/// The right-hand side of `set_attr` and `return_value`.
struct ValueRef {
    enum class Kind { literal, resource, call };

    Kind kind = Kind::literal;
    std::string text;  // literal text or `@type/name`
    MethodRef callee;  // kind == call

    static ValueRef literal(std::string s) { return {Kind::literal, std::move(s), {}}; }
    static ValueRef resource(std::string s) { return {Kind::resource, std::move(s), {}}; }
    static ValueRef call(MethodRef m) { return {Kind::call, {}, std::move(m)}; }

    friend bool operator==(const ValueRef&, const ValueRef&) = default;
};

enum class StartApi { start_activity, start_activity_for_result, start_activity_if_needed };
enum class FragmentVia { replace, add };

namespace stmt {

/// startActivity / startActivityForResult / startActivityIfNeeded. The
/// target is either a literal class or an intent variable.
struct StartActivity {
    std::string target;
    bool target_is_var = false;
    StartApi api = StartApi::start_activity;
    friend bool operator==(const StartActivity&, const StartActivity&) = default;
};

struct NewIntent {
    std::string var;
    std::string target;
    friend bool operator==(const NewIntent&, const NewIntent&) = default;
};

struct FragmentCommit {
    std::string fragment;
    FragmentVia via = FragmentVia::replace;
    friend bool operator==(const FragmentCommit&, const FragmentCommit&) = default;
};

struct SetAdapter {
    enum class Source { fragment, layout, var };

    std::string view_var;
    std::string view_type;
    Source source = Source::layout;
    std::string source_name;
    friend bool operator==(const SetAdapter&, const SetAdapter&) = default;
};

/// `parent` is `root` (the page's parent layout), `@id/<name>` (a node of
/// the static layout) or a variable.
struct AddView {
    std::string parent;
    std::string child;
    friend bool operator==(const AddView&, const AddView&) = default;
};

/// LayoutInflater.inflate(layout, into). Without `into` the inflated view is
/// only bound to `var`.
struct Inflate {
    std::string layout;
    std::string var;
    std::optional<std::string> into;
    friend bool operator==(const Inflate&, const Inflate&) = default;
};

struct NewComponent {
    std::string var;
    std::string tag;
    friend bool operator==(const NewComponent&, const NewComponent&) = default;
};

struct SetAttr {
    std::string var;
    std::string attr;
    ValueRef value;
    friend bool operator==(const SetAttr&, const SetAttr&) = default;
};

struct Call {
    MethodRef callee;
    friend bool operator==(const Call&, const Call&) = default;
};

struct ReturnValue {
    ValueRef value;
    friend bool operator==(const ReturnValue&, const ReturnValue&) = default;
};

} // namespace stmt

using Statement = std::variant<stmt::StartActivity, stmt::NewIntent,
                               stmt::FragmentCommit, stmt::SetAdapter,
                               stmt::AddView, stmt::Inflate,
                               stmt::NewComponent, stmt::SetAttr, stmt::Call,
                               stmt::ReturnValue>;

struct MethodModel {
    std::string name;
    std::vector<Statement> statements;

    friend bool operator==(const MethodModel&, const MethodModel&) = default;
};

enum class ClassKind { activity, fragment, inner, plain };

std::string_view to_string(ClassKind kind);

struct ClassModel {
    std::string name;
    ClassKind kind = ClassKind::plain;
    std::optional<std::string> outer_class;
    std::optional<std::string> superclass;
    /// Content layout (setContentView / onCreateView inflation).
    std::optional<std::string> layout;
    /// Verbatim source listing, if the bundle provides one.
    std::optional<std::string> source;
    /// Set when decompilation failed; such classes carry no methods.
    bool undecompiled = false;
    /// Explicit `"kind": "fragment"` hint from the code model file.
    bool fragment_hint = false;
    std::vector<MethodModel> methods;

    const MethodModel* find_method(std::string_view name) const;

    friend bool operator==(const ClassModel&, const ClassModel&) = default;
};

class CodeModel {
public:
    CodeModel() = default;
    /// Throws LinkError if class names are not unique.
    explicit CodeModel(std::vector<ClassModel> classes);

    const std::vector<ClassModel>& classes() const noexcept { return classes_; }
    const ClassModel* find(std::string_view name) const;
    const MethodModel* find_method(const MethodRef& ref) const;

    friend bool operator==(const CodeModel& a, const CodeModel& b)
    {
        return a.classes_ == b.classes_;
    }

private:
    std::vector<ClassModel> classes_;
    std::map<std::string, std::size_t, std::less<>> index_;
};

/// Parses `code.model.json`. Class kinds are left as parsed hints; they are
/// derived when the bundle is assembled. Throws ParseError.
std::vector<ClassModel> parse_code_model(std::string_view json,
                                         const std::string& file);

/// Pseudo-Java listing of a class, used when the bundle has no source text.
std::string render_class_listing(const ClassModel& cls);

} // namespace storyboard

#endif
