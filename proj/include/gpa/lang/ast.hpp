#pragma once

// Abstract syntax of GPA input files: parameters, sequential component
// definitions, the grouped system equation and the analysis blocks.

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace gpa::lang {

/// Location in the source text (1-based). Positions never take part in
/// structural comparison of syntax trees.
struct SourcePos {
  int line = 0;
  int column = 0;

  friend bool operator==(const SourcePos&, const SourcePos&) { return true; }
};

/// Heap-allocated value with deep copy and value equality, used for the
/// recursive parts of the syntax tree.
template <class T>
class Box {
 public:
  Box(T value) : ptr_(std::make_unique<T>(std::move(value))) {}
  Box(const Box& other) : ptr_(std::make_unique<T>(*other.ptr_)) {}
  Box(Box&&) noexcept = default;
  Box& operator=(const Box& other) {
    *ptr_ = *other.ptr_;
    return *this;
  }
  Box& operator=(Box&&) noexcept = default;
  ~Box() = default;

  T& operator*() { return *ptr_; }
  const T& operator*() const { return *ptr_; }
  T* operator->() { return ptr_.get(); }
  const T* operator->() const { return ptr_.get(); }

  friend bool operator==(const Box& a, const Box& b) { return *a.ptr_ == *b.ptr_; }

 private:
  std::unique_ptr<T> ptr_;
};

/// A rate or multiplicity: a parameter name or (as an extension) a literal.
struct ValueRef {
  std::variant<std::string, double> value;
  SourcePos pos;

  bool is_literal() const { return std::holds_alternative<double>(value); }
  bool operator==(const ValueRef&) const = default;
};

struct Summation;

/// What a prefix evolves into.
struct Continuation {
  enum class Kind { kNamed, kStop, kNested };
  Kind kind = Kind::kStop;
  std::string name;                      // kNamed
  std::optional<Box<Summation>> nested;  // kNested

  bool operator==(const Continuation&) const = default;
};

/// (action, rate).continuation
struct Prefix {
  std::string action;
  ValueRef rate;
  Continuation next;
  SourcePos pos;

  bool operator==(const Prefix&) const = default;
};

struct Summation {
  std::vector<Prefix> prefixes;

  bool operator==(const Summation&) const = default;
};

struct ComponentExpr;

struct ComponentCooperation {
  Box<ComponentExpr> left;
  Box<ComponentExpr> right;
  std::vector<std::string> actions;

  bool operator==(const ComponentCooperation&) const = default;
};

struct ComponentRef {
  std::string name;
  SourcePos pos;

  bool operator==(const ComponentRef&) const = default;
};

/// Right-hand side of a component definition.
struct ComponentExpr {
  std::variant<Summation, ComponentRef, ComponentCooperation> node;
  SourcePos pos;

  bool operator==(const ComponentExpr&) const = default;
};

struct ParameterDef {
  std::string name;
  double value = 0.0;
  SourcePos pos;

  bool operator==(const ParameterDef&) const = default;
};

struct ComponentDef {
  std::string name;
  ComponentExpr body;
  SourcePos pos;

  bool operator==(const ComponentDef&) const = default;
};

struct GroupMember {
  std::string component;
  std::optional<ValueRef> multiplicity;  // absent means one copy
  SourcePos pos;

  bool operator==(const GroupMember&) const = default;
};

struct Group {
  std::string label;
  std::vector<GroupMember> members;
  SourcePos pos;

  bool operator==(const Group&) const = default;
};

struct GroupedModel;

struct GroupCooperation {
  Box<GroupedModel> left;
  Box<GroupedModel> right;
  std::vector<std::string> actions;  // duplicates collapsed, first-seen order

  bool operator==(const GroupCooperation&) const = default;
};

struct GroupedModel {
  std::variant<Group, GroupCooperation> node;

  bool operator==(const GroupedModel&) const = default;
};

// ---------------------------------------------------------------------------
// Moment expressions

/// group:component
struct GCPair {
  std::string group;
  std::string component;
  SourcePos pos;

  bool operator==(const GCPair&) const = default;
};

/// Product of count variables with positive integer exponents.
struct Moment {
  std::vector<std::pair<GCPair, int>> factors;

  bool operator==(const Moment&) const = default;
};

struct MomentExpr;

enum class BinaryOp { kAdd, kSub, kMul, kDiv, kPow };

struct BinaryExpr {
  BinaryOp op;
  Box<MomentExpr> left;
  Box<MomentExpr> right;

  bool operator==(const BinaryExpr&) const = default;
};

struct NegateExpr {
  Box<MomentExpr> operand;

  bool operator==(const NegateExpr&) const = default;
};

/// E[m1 + m2 + ...]
struct Expectation {
  std::vector<Moment> terms;

  bool operator==(const Expectation&) const = default;
};

/// Var[p1 + p2 + ...]
struct Variance {
  std::vector<GCPair> terms;

  bool operator==(const Variance&) const = default;
};

struct Covariance {
  GCPair first;
  GCPair second;

  bool operator==(const Covariance&) const = default;
};

/// Central[p, n] or StandardisedCentral[p, n]
struct CentralMoment {
  GCPair pair;
  int order = 1;
  bool standardised = false;

  bool operator==(const CentralMoment&) const = default;
};

struct NumberLiteral {
  double value = 0.0;

  bool operator==(const NumberLiteral&) const = default;
};

struct ParameterRef {
  std::string name;
  SourcePos pos;

  bool operator==(const ParameterRef&) const = default;
};

struct MomentExpr {
  std::variant<BinaryExpr, NegateExpr, Expectation, Variance, Covariance,
               CentralMoment, NumberLiteral, ParameterRef>
      node;

  bool operator==(const MomentExpr&) const = default;
};

// ---------------------------------------------------------------------------
// Analyses

struct PlotCommand {
  std::vector<MomentExpr> expressions;

  bool operator==(const PlotCommand&) const = default;
};

struct SwitchpointsCommand {
  int order = 1;

  bool operator==(const SwitchpointsCommand&) const = default;
};

struct Command {
  std::variant<PlotCommand, SwitchpointsCommand> kind;
  std::optional<std::string> redirect;
  SourcePos pos;

  bool operator==(const Command&) const = default;
};

struct OdesParams {
  double stop_time = 0.0;
  double step_size = 0.0;
  long density = 1;

  bool operator==(const OdesParams&) const = default;
};

struct SimulationParams {
  double stop_time = 0.0;
  double step_size = 0.0;
  long replications = 1;

  bool operator==(const SimulationParams&) const = default;
};

struct OdesAnalysis {
  OdesParams params;
  std::vector<Command> commands;
  SourcePos pos;

  bool operator==(const OdesAnalysis&) const = default;
};

struct SimulationAnalysis {
  SimulationParams params;
  std::vector<Command> commands;
  SourcePos pos;

  bool operator==(const SimulationAnalysis&) const = default;
};

struct ComparisonAnalysis {
  OdesAnalysis odes;
  SimulationAnalysis simulation;
  std::vector<Command> commands;
  SourcePos pos;

  bool operator==(const ComparisonAnalysis&) const = default;
};

using AnalysisBlock =
    std::variant<OdesAnalysis, SimulationAnalysis, ComparisonAnalysis>;

struct ModelFile {
  std::vector<ParameterDef> parameters;
  std::vector<ComponentDef> components;
  GroupedModel system;
  std::vector<AnalysisBlock> analyses;

  bool operator==(const ModelFile&) const = default;
};

}  // namespace gpa::lang
