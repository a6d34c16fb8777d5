import { Wizard } from './wizard.js';

const root = document.getElementById('app');
if (root) {
  new Wizard(root).start();
}
