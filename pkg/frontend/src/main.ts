/** Page entry point: wires the controller to the service base URL.
 *
 * The URL defaults to the local service port and can be overridden with
 * ?service=http://host:port (the only piece of configuration).
 */

import { SessionApi } from "./api.js";
import { Controller } from "./ui.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8000";

const root = document.getElementById("app");
if (root === null) {
  throw new Error("missing #app mount point");
}

export const controller = new Controller(new SessionApi(baseUrl), root);
