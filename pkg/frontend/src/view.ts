/** Pure projection from a session snapshot (plus local UI state) to the
 * workspace view model. No tutoring logic lives here: statements, colors,
 * verdict feedback, and hint decisions all come from the server. */

import type { Snapshot, WorkspaceNode } from "./types";
import { RULES } from "./types";

export interface UiState {
  selectedNodes: number[]; // at most 2
  selectedRule: string | null;
  derivedText: string;
  note: string | null; // transient client-side prompt (e.g. "select a node")
  busy: boolean; // one in-flight mutating request
}

export const initialUiState: UiState = {
  selectedNodes: [],
  selectedRule: null,
  derivedText: "",
  note: null,
  busy: false,
};

export interface NodeGlyph {
  id: number;
  label: string; // display number, "C", or "?"
  statement: string;
  fill: "green" | "yellow" | "gray" | "cyan" | "plain";
  subgoal: boolean; // show the "Subgoal" tag
  questionMark: boolean; // unjustified conclusion and pending assertions
  selected: boolean;
  selectable: boolean;
  deletable: boolean;
  row: number;
  col: number;
}

export interface ArrowGlyph {
  from: number;
  to: number;
  rule: string;
}

export interface RuleButton {
  rule: string;
  selected: boolean;
  intended: boolean; // listed in the problem's info box
}

export interface WorkspaceView {
  banner: string | null; // set instead of content when the snapshot is unusable
  phaseIndicator: string;
  nodes: NodeGlyph[];
  arrows: ArrowGlyph[];
  rows: number;
  cols: number;
  ruleButtons: RuleButton[];
  infoBox: string[];
  messageBox: string;
  derivedText: string;
  buttons: {
    submit: boolean;
    getHint: boolean;
    skip: boolean;
    restart: boolean;
    advance: boolean;
  };
}

const MIDDLE_COLUMNS = 4;

function fillOf(node: WorkspaceNode): NodeGlyph["fill"] {
  if (node.kind === "assertion") return "cyan";
  if (node.color === "green" || node.color === "yellow" || node.color === "gray") {
    return node.color;
  }
  return "plain";
}

function glyph(node: WorkspaceNode, ui: UiState, row: number, col: number): NodeGlyph {
  const pendingAssertion = node.kind === "assertion";
  const unjustifiedConclusion = node.kind === "conclusion" && node.rule === null;
  return {
    id: node.id,
    label: node.label,
    statement: node.statement,
    fill: fillOf(node),
    subgoal: pendingAssertion,
    questionMark: pendingAssertion || unjustifiedConclusion,
    selected: ui.selectedNodes.includes(node.id),
    selectable: node.kind === "premise" || node.kind === "derived",
    deletable: pendingAssertion,
    row,
    col,
  };
}

export function render(snapshot: Snapshot, ui: UiState = initialUiState): WorkspaceView {
  if (!snapshot || !Array.isArray(snapshot.workspace)) {
    return {
      ...emptyView(),
      banner: "The session snapshot could not be displayed.",
    };
  }
  const premises = snapshot.workspace.filter((n) => n.kind === "premise");
  const conclusion = snapshot.workspace.filter((n) => n.kind === "conclusion");
  const middle = snapshot.workspace.filter(
    (n) => n.kind === "derived" || n.kind === "assertion",
  );

  const nodes: NodeGlyph[] = [];
  premises.forEach((n, i) => nodes.push(glyph(n, ui, 0, i)));
  middle.forEach((n, i) =>
    nodes.push(glyph(n, ui, 1 + Math.floor(i / MIDDLE_COLUMNS), i % MIDDLE_COLUMNS)),
  );
  const middleRows = Math.ceil(middle.length / MIDDLE_COLUMNS);
  conclusion.forEach((n, i) => nodes.push(glyph(n, ui, 1 + middleRows, i)));

  const byId = new Map(snapshot.workspace.map((n) => [n.id, n]));
  const arrows: ArrowGlyph[] = [];
  for (const node of snapshot.workspace) {
    if (node.rule === null) continue;
    for (const source of node.sources) {
      if (byId.has(source)) arrows.push({ from: source, to: node.id, rule: node.rule });
    }
  }

  const training = snapshot.phase === "training";
  const solving =
    snapshot.phase === "pretest" || training || snapshot.phase === "posttest";
  const intended = new Set(snapshot.problem?.rules ?? []);
  const view: WorkspaceView = {
    banner: snapshot.terminal ? "All done - the session is complete." : null,
    phaseIndicator: phaseIndicator(snapshot),
    nodes,
    arrows,
    rows: 2 + middleRows,
    cols: Math.max(premises.length, MIDDLE_COLUMNS, 1),
    ruleButtons: RULES.map((rule) => ({
      rule,
      selected: ui.selectedRule === rule,
      intended: intended.has(rule),
    })),
    infoBox: infoBox(snapshot),
    messageBox: ui.note ?? snapshot.message_box,
    derivedText: ui.derivedText,
    buttons: {
      submit: solving && !ui.busy,
      getHint: training && !ui.busy,
      skip: snapshot.can_skip && !ui.busy,
      restart: snapshot.can_restart && !ui.busy,
      advance: snapshot.can_advance && !ui.busy,
    },
  };
  return view;
}

function phaseIndicator(snapshot: Snapshot): string {
  const problem = snapshot.problem ? ` - problem ${snapshot.problem.id}` : "";
  if (snapshot.phase === "training") {
    return `Training level ${snapshot.level} (${snapshot.solved_in_level}/4 solved, `
      + `${3 - snapshot.skips_used} skips left)${problem}`;
  }
  if (snapshot.phase === "intro") return `Worked example${problem}`;
  if (snapshot.phase === "done") return "Session complete";
  return `${capitalize(snapshot.phase)}${problem}`;
}

function infoBox(snapshot: Snapshot): string[] {
  if (!snapshot.problem) return [];
  const lines = [
    `Derive: ${snapshot.problem.conclusion}`,
    `Premises: ${snapshot.problem.premises.join(", ")}`,
  ];
  if (snapshot.problem.rules.length) {
    lines.push(`Rules to practice: ${snapshot.problem.rules.join(", ")}`);
  }
  if (snapshot.phase === "intro") {
    lines.push("Watch the worked example; press Next to step through it.");
  }
  return lines;
}

function capitalize(text: string): string {
  return text.charAt(0).toUpperCase() + text.slice(1);
}

function emptyView(): WorkspaceView {
  return {
    banner: null,
    phaseIndicator: "",
    nodes: [],
    arrows: [],
    rows: 0,
    cols: 0,
    ruleButtons: [],
    infoBox: [],
    messageBox: "",
    derivedText: "",
    buttons: { submit: false, getHint: false, skip: false, restart: false, advance: false },
  };
}
