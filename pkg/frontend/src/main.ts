/** Page bootstrap: a tiny start form, then the workspace. */

import { ApiClient } from "./api";
import { mount } from "./dom";
import { SessionStore } from "./store";

function start(): void {
  const root = document.querySelector<HTMLElement>("#app");
  if (!root) throw new Error("missing #app element");

  const form = document.createElement("div");
  form.id = "start-form";
  form.innerHTML = `
    <h2>Logic proof tutor</h2>
    <label>Name <input id="student" value="student" /></label>
    <label>Hints
      <select id="condition">
        <option value="assertions">Assertions (subgoal nodes)</option>
        <option value="messages">Messages (after inactivity)</option>
      </select>
    </label>
    <label>Seed <input id="seed" type="number" value="1" /></label>
    <button id="start">Start</button>`;
  root.appendChild(form);

  const store = new SessionStore(new ApiClient(""));
  form.querySelector("#start")!.addEventListener("click", () => {
    const student = (form.querySelector("#student") as HTMLInputElement).value || "student";
    const condition = (form.querySelector("#condition") as HTMLSelectElement).value;
    const seed = Number((form.querySelector("#seed") as HTMLInputElement).value) || 0;
    void store.create(student, condition, seed).then(() => {
      form.remove();
      const shell = document.createElement("div");
      shell.id = "tutor";
      root.appendChild(shell);
      mount(shell, store);
    });
  });
}

start();
