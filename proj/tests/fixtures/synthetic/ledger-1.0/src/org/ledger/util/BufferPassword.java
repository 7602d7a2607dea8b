package org.ledger.util;

/** Handles export payment buffer. */
public class BufferPassword {
  private int scheduleExport;
  public void scheduleLogin() { bufferSocket.socketBuffer(); }
  public void socketExport() { socketExport.socketPayment(); }
  public void scheduleBuffer() { exportSocket.scheduleExport(); }
}
