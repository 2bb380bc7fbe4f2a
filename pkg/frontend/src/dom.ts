/** DOM binding: draws a WorkspaceView into the page and wires controls to
 * store actions. Layout follows the tutor convention: workspace on the left
 * (premises top, conclusion bottom), rule buttons in the middle, info box on
 * the right, Get Hint and the message box at the bottom left. */

import { SessionStore } from "./store";
import type { ArrowGlyph, NodeGlyph, WorkspaceView } from "./view";

const CELL_W = 168;
const CELL_H = 96;

export function mount(root: HTMLElement, store: SessionStore): void {
  root.innerHTML = `
    <header id="phase-indicator"></header>
    <div id="banner" hidden></div>
    <main>
      <section id="workspace-pane">
        <div id="workspace"><svg id="arrows"></svg></div>
        <div id="bottom-bar">
          <button id="get-hint">Get Hint</button>
          <button id="restart">Restart</button>
          <button id="skip">Skip</button>
          <button id="advance">Next</button>
          <div id="message-box" aria-live="polite"></div>
        </div>
      </section>
      <section id="rules-pane"><h3>Rules</h3><div id="rule-buttons"></div>
        <div id="derive-row">
          <input id="derived-text" placeholder="derived statement, e.g. ~A&amp;B" />
          <button id="submit-step">Derive</button>
        </div>
      </section>
      <section id="info-pane"><h3>Problem</h3><div id="info-box"></div></section>
    </main>`;

  const el = (id: string) => root.querySelector<HTMLElement>(`#${id}`)!;
  const input = root.querySelector<HTMLInputElement>("#derived-text")!;

  el("get-hint").addEventListener("click", () => void store.getHint());
  el("restart").addEventListener("click", () => void store.restart());
  el("skip").addEventListener("click", () => void store.skip());
  el("advance").addEventListener("click", () => void store.advance());
  el("submit-step").addEventListener("click", () => {
    store.setDerivedText(input.value);
    void store.submit();
  });
  input.addEventListener("input", () => store.setDerivedText(input.value));
  input.addEventListener("keydown", (event) => {
    if (event.key === "Enter") {
      store.setDerivedText(input.value);
      void store.submit();
    }
  });

  store.subscribe((view) => draw(root, store, view));
}

export function draw(root: HTMLElement, store: SessionStore, view: WorkspaceView): void {
  const el = (id: string) => root.querySelector<HTMLElement>(`#${id}`)!;
  el("phase-indicator").textContent = view.phaseIndicator;
  const banner = el("banner");
  banner.hidden = view.banner === null;
  banner.textContent = view.banner ?? "";

  const workspace = el("workspace");
  workspace.querySelectorAll(".node").forEach((n) => n.remove());
  workspace.style.height = `${Math.max(view.rows, 3) * CELL_H + 24}px`;
  workspace.style.minWidth = `${view.cols * CELL_W + 24}px`;
  const positions = new Map<number, { x: number; y: number }>();
  for (const node of view.nodes) {
    const x = node.col * CELL_W + 12;
    const y = node.row * CELL_H + 12;
    positions.set(node.id, { x: x + CELL_W / 2 - 8, y: y + 30 });
    workspace.appendChild(nodeElement(node, store, x, y));
  }
  drawArrows(workspace.querySelector("svg")!, view.arrows, positions);

  const ruleBox = el("rule-buttons");
  ruleBox.innerHTML = "";
  for (const button of view.ruleButtons) {
    const b = document.createElement("button");
    b.textContent = button.rule;
    b.className =
      "rule" + (button.selected ? " selected" : "") + (button.intended ? " intended" : "");
    b.addEventListener("click", () => store.chooseRule(button.rule));
    ruleBox.appendChild(b);
  }

  el("info-box").innerHTML = view.infoBox
    .map((line) => `<p>${escapeHtml(line)}</p>`)
    .join("");
  el("message-box").textContent = view.messageBox;

  const input = root.querySelector<HTMLInputElement>("#derived-text")!;
  if (document.activeElement !== input) input.value = view.derivedText;
  setEnabled(el("submit-step"), view.buttons.submit);
  setEnabled(el("get-hint"), view.buttons.getHint);
  setEnabled(el("skip"), view.buttons.skip);
  setEnabled(el("restart"), view.buttons.restart);
  setEnabled(el("advance"), view.buttons.advance);
  (el("advance") as HTMLElement).hidden = !view.buttons.advance;
}

function nodeElement(
  node: NodeGlyph,
  store: SessionStore,
  x: number,
  y: number,
): HTMLElement {
  const div = document.createElement("div");
  div.className =
    `node fill-${node.fill}` +
    (node.selected ? " selected" : "") +
    (node.selectable ? " selectable" : "");
  div.dataset.nodeId = String(node.id);
  div.style.left = `${x}px`;
  div.style.top = `${y}px`;
  const tag = node.subgoal ? `<span class="subgoal-tag">Subgoal</span>` : "";
  const mark = node.questionMark ? `<span class="qmark">?</span>` : "";
  const remove = node.deletable
    ? `<button class="delete-assertion" title="delete the subgoal">x</button>`
    : "";
  div.innerHTML = `${tag}<span class="node-label">${escapeHtml(node.label)}</span>` +
    `<span class="statement">${escapeHtml(node.statement)}</span>${mark}${remove}`;
  if (node.selectable) {
    div.addEventListener("click", () => store.toggleNode(node.id));
  }
  const deleter = div.querySelector(".delete-assertion");
  if (deleter) {
    deleter.addEventListener("click", (event) => {
      event.stopPropagation();
      void store.deleteAssertion(node.id);
    });
  }
  return div;
}

function drawArrows(
  svg: SVGElement,
  arrows: ArrowGlyph[],
  positions: Map<number, { x: number; y: number }>,
): void {
  const ns = "http://www.w3.org/2000/svg";
  svg.innerHTML =
    `<defs><marker id="arrowhead" markerWidth="8" markerHeight="8" refX="7" refY="3" orient="auto">` +
    `<path d="M0,0 L7,3 L0,6 z"/></marker></defs>`;
  for (const arrow of arrows) {
    const from = positions.get(arrow.from);
    const to = positions.get(arrow.to);
    if (!from || !to) continue;
    const line = document.createElementNS(ns, "line");
    line.setAttribute("x1", String(from.x));
    line.setAttribute("y1", String(from.y));
    line.setAttribute("x2", String(to.x));
    line.setAttribute("y2", String(to.y));
    line.setAttribute("marker-end", "url(#arrowhead)");
    line.setAttribute("class", "arrow");
    svg.appendChild(line);
    const label = document.createElementNS(ns, "text");
    label.setAttribute("x", String((from.x + to.x) / 2 + 4));
    label.setAttribute("y", String((from.y + to.y) / 2 - 4));
    label.setAttribute("class", "arrow-label");
    label.textContent = arrow.rule;
    svg.appendChild(label);
  }
}

function setEnabled(element: HTMLElement, enabled: boolean): void {
  (element as HTMLButtonElement).disabled = !enabled;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;");
}
