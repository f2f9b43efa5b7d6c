// Page wiring: two side-by-side session panels fed by the same audio
// source (microphone or WAV file), so two servers or two configurations
// can be compared live. Query params preselect the connection:
//   ?url=ws://host:port&url2=ws://other:port&source=en&target=de

import { framesOf, floatToPcm16, mixToMono, resampleLinear, FRAME_SAMPLES } from "./pcm.js";
import { SessionController } from "./session.js";
import { SessionPanel } from "./panel.js";
import { parseWav } from "./wav.js";

interface AppState {
  panels: SessionPanel[];
  micContext: AudioContext | null;
  micStream: MediaStream | null;
  filePump: number | null;
}

const app: AppState = { panels: [], micContext: null, micStream: null, filePump: null };

function param(name: string, fallback: string): string {
  return new URLSearchParams(window.location.search).get(name) ?? fallback;
}

function buildControllers(): void {
  const source = (document.getElementById("source-lang") as HTMLInputElement).value;
  const target = (document.getElementById("target-lang") as HTMLInputElement).value;
  const urls = [
    (document.getElementById("url-a") as HTMLInputElement).value,
    (document.getElementById("url-b") as HTMLInputElement).value,
  ];
  const audioId = `web-${Date.now()}`;
  app.panels.forEach((panel, index) => {
    const url = urls[index];
    if (!url) {
      panel.controller = null;
      return;
    }
    const controller = new SessionController({
      url,
      sourceLang: source,
      targetLang: target,
      audioId: `${audioId}-${index}`,
      onUpdate: (state) => panel.update(state),
    });
    panel.controller = controller;
    controller.start();
  });
}

function liveControllers(): SessionController[] {
  return app.panels
    .map((panel) => panel.controller)
    .filter((c): c is SessionController => c !== null);
}

function broadcast(frame: Int16Array): void {
  for (const controller of liveControllers()) {
    controller.sendFrame(frame);
  }
}

async function startMicrophone(): Promise<void> {
  let stream: MediaStream;
  try {
    stream = await navigator.mediaDevices.getUserMedia({ audio: true });
  } catch {
    setHint("microphone permission denied — allow access in the browser " +
            "address bar, or stream a WAV file instead");
    return;
  }
  buildControllers();
  const context = new AudioContext();
  await context.audioWorklet.addModule("dist/pcm-worklet.js");
  const sourceNode = context.createMediaStreamSource(stream);
  const capture = new AudioWorkletNode(context, "pcm-capture");
  capture.port.onmessage = (event) => broadcast(event.data as Int16Array);
  sourceNode.connect(capture);
  app.micContext = context;
  app.micStream = stream;
  setHint("streaming microphone audio; press stop to finish");
}

async function streamFile(file: File): Promise<void> {
  const wav = parseWav(await file.arrayBuffer());
  const mono = mixToMono(wav.channels);
  const resampled = resampleLinear(mono, wav.sampleRate);
  const frames = framesOf(floatToPcm16(resampled));
  buildControllers();
  let index = 0;
  setHint(`streaming ${file.name} in real time`);
  app.filePump = window.setInterval(() => {
    if (index >= frames.length) {
      stopStreaming();
      return;
    }
    broadcast(frames[index]);
    index += 1;
  }, (FRAME_SAMPLES / 16000) * 1000);
}

function stopStreaming(): void {
  if (app.filePump !== null) {
    clearInterval(app.filePump);
    app.filePump = null;
  }
  if (app.micStream !== null) {
    app.micStream.getTracks().forEach((track) => track.stop());
    app.micStream = null;
  }
  if (app.micContext !== null) {
    void app.micContext.close();
    app.micContext = null;
  }
  for (const controller of liveControllers()) {
    controller.stop();
  }
  setHint("session stopped");
}

function setHint(text: string): void {
  (document.getElementById("hint") as HTMLElement).textContent = text;
}

function init(): void {
  const panelHost = document.getElementById("panels") as HTMLElement;
  app.panels = [new SessionPanel("System A"), new SessionPanel("System B")];
  app.panels.forEach((panel) => panelHost.appendChild(panel.root));

  (document.getElementById("url-a") as HTMLInputElement).value =
    param("url", "ws://127.0.0.1:8765");
  (document.getElementById("url-b") as HTMLInputElement).value = param("url2", "");
  (document.getElementById("source-lang") as HTMLInputElement).value =
    param("source", "en");
  (document.getElementById("target-lang") as HTMLInputElement).value =
    param("target", "de");

  (document.getElementById("mic-button") as HTMLButtonElement)
    .addEventListener("click", () => void startMicrophone());
  (document.getElementById("stop-button") as HTMLButtonElement)
    .addEventListener("click", stopStreaming);
  (document.getElementById("file-input") as HTMLInputElement)
    .addEventListener("change", (event) => {
      const file = (event.target as HTMLInputElement).files?.[0];
      if (file) {
        void streamFile(file);
      }
    });
}

document.addEventListener("DOMContentLoaded", init);
